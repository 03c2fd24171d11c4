"""Benchmark the lattice-point counting backends against each other.

Runs the same dilation counts through the numba, numpy, and python kernels
and reports wall time per backend.  Counts must agree bit-for-bit; any
disagreement aborts the run.

Usage: python benchmarks/bench_counting.py [corpus names...]
"""

import sys
import time

from ehrkit import corpus
from ehrkit.counting import available_backends, count_box_points
from ehrkit.ehrhart import _normalized_inequalities

DEFAULT_NAMES = ["example5_p1", "example6_p2", "r1", "example2_p12"]
DILATIONS = range(1, 7)
REPEATS = 3


def time_backend(backend, normals, offsets, ranges):
    best = float("inf")
    counts = []
    for _ in range(REPEATS):
        start = time.perf_counter()
        counts = [
            count_box_points(
                normals,
                [k * b for b in offsets],
                [0] * len(ranges),
                [k * r for r in ranges],
                backend=backend,
            )
            for k in DILATIONS
        ]
        best = min(best, time.perf_counter() - start)
    return best, counts


def main():
    names = sys.argv[1:] or DEFAULT_NAMES
    backends = available_backends()
    print(f"backends: {', '.join(backends)}; dilations {DILATIONS.start}..{DILATIONS.stop - 1}, best of {REPEATS}")
    for name in names:
        polytope = corpus.load(name)
        normals, offsets, ranges = _normalized_inequalities(polytope)
        print(f"\n{name}: dim {polytope.dim}, box ranges {ranges}")
        reference = None
        for backend in backends:
            elapsed, counts = time_backend(backend, normals, offsets, ranges)
            if reference is None:
                reference = counts
            elif counts != reference:
                raise SystemExit(f"backend {backend} disagrees on {name}: {counts} != {reference}")
            print(f"  {backend:>7}: {elapsed * 1000:9.2f} ms  counts {counts}")


if __name__ == "__main__":
    main()
