"""Lattice-point counting kernels.

Counts integer points of a box that satisfy a system a . x <= b of integer
inequalities.  The innermost coordinate is resolved in closed form (an
integer interval per prefix), so the scan cost is the product of the other
axis lengths; the longest axis is always made innermost.

Three interchangeable backends produce identical exact counts:

* ``numba``  - jit-compiled kernel, parallel over the leading axis (default)
* ``numpy``  - vectorized chunked scan
* ``python`` - arbitrary-precision reference path

Select one with the ``EHRKIT_BACKEND`` environment variable.  The int64
backends are used only when a rigorous bound proves no intermediate can
overflow; otherwise the python path is taken regardless of the selection.
``EHRKIT_THREADS`` caps the numba thread count.
"""

from __future__ import annotations

import os
from itertools import product
from math import prod

import numpy as np

BACKEND_ENV = "EHRKIT_BACKEND"
THREADS_ENV = "EHRKIT_THREADS"
_INT64_LIMIT = 2**62

try:
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy", "python") if HAS_NUMBA else ("numpy", "python")


def active_backend() -> str:
    """Backend selected by the environment, defaulting to the fastest."""
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if not choice:
        return "numba" if HAS_NUMBA else "numpy"
    if choice not in ("numba", "numpy", "python"):
        raise ValueError(
            f"{BACKEND_ENV} must be one of numba, numpy, python; got {choice!r}"
        )
    if choice == "numba" and not HAS_NUMBA:
        return "numpy"
    return choice


def count_box_points(normals, offsets, lows, highs, backend: str | None = None) -> int:
    """Exact count of integer x with lows <= x <= highs and normals @ x <= offsets."""
    normals = [tuple(row) for row in normals]
    offsets = list(offsets)
    lows = list(lows)
    highs = list(highs)
    n = len(lows)
    if len(highs) != n or len(offsets) != len(normals):
        raise ValueError("mismatched system dimensions")
    if any(len(row) != n for row in normals):
        raise ValueError("every normal must have one entry per axis")
    if n == 0 or any(lo > hi for lo, hi in zip(lows, highs)):
        return 0
    if not normals:
        return prod(hi - lo + 1 for lo, hi in zip(lows, highs))

    # Make the longest axis innermost; its count per prefix is closed form.
    axis = max(range(n), key=lambda i: highs[i] - lows[i])
    order = [i for i in range(n) if i != axis] + [axis]
    normals = [tuple(row[i] for i in order) for row in normals]
    lows = [lows[i] for i in order]
    highs = [highs[i] for i in order]

    if backend is None:
        backend = active_backend()
    elif backend not in ("numba", "numpy", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    elif backend == "numba" and not HAS_NUMBA:
        backend = "numpy"
    if backend != "python" and not _fits_int64(normals, offsets, lows, highs):
        backend = "python"
    if n == 1:
        # A single closed-form interval; not worth dispatching to a kernel.
        return _count_python(normals, offsets, lows, highs)

    if backend == "numba":
        _apply_thread_override()
        return int(
            _count_numba(
                np.array(normals, dtype=np.int64),
                np.array(offsets, dtype=np.int64),
                np.array(lows, dtype=np.int64),
                np.array(highs, dtype=np.int64),
            )
        )
    if backend == "numpy":
        return _count_numpy(
            np.array(normals, dtype=np.int64),
            np.array(offsets, dtype=np.int64),
            np.array(lows, dtype=np.int64),
            np.array(highs, dtype=np.int64),
        )
    return _count_python(normals, offsets, lows, highs)


def _fits_int64(normals, offsets, lows, highs) -> bool:
    """True when every intermediate of the int64 kernels is provably safe."""
    coord_bound = max(max(abs(lo), abs(hi)) for lo, hi in zip(lows, highs))
    if coord_bound >= _INT64_LIMIT:
        return False
    # The accumulated count is at most the box volume.
    if prod(hi - lo + 1 for lo, hi in zip(lows, highs)) >= _INT64_LIMIT:
        return False
    for row, off in zip(normals, offsets):
        reach = abs(off) + sum(abs(a) for a in row) * coord_bound
        if reach >= _INT64_LIMIT:
            return False
    return True


def _apply_thread_override():
    value = os.environ.get(THREADS_ENV, "").strip()
    if value:
        import numba

        numba.set_num_threads(max(1, int(value)))


def _count_python(normals, offsets, lows, highs) -> int:
    last = len(lows) - 1
    total = 0
    prefix_ranges = [range(lows[i], highs[i] + 1) for i in range(last)]
    for prefix in product(*prefix_ranges):
        lo, hi = lows[last], highs[last]
        feasible = True
        for row, off in zip(normals, offsets):
            r = off
            for i in range(last):
                r -= row[i] * prefix[i]
            a = row[last]
            if a == 0:
                if r < 0:
                    feasible = False
                    break
            elif a > 0:
                q = r // a
                if q < hi:
                    hi = q
            else:
                q = -(r // (-a))
                if q > lo:
                    lo = q
        if feasible and lo <= hi:
            total += hi - lo + 1
    return total


_NUMPY_CHUNK = 1 << 18


def _count_numpy(A, b, lows, highs) -> int:
    n = len(lows)
    last = n - 1
    prefix_sizes = [int(highs[i] - lows[i] + 1) for i in range(last)]
    total_prefix = prod(prefix_sizes)
    a_last = A[:, last]
    total = 0
    for start in range(0, total_prefix, _NUMPY_CHUNK):
        stop = min(start + _NUMPY_CHUNK, total_prefix)
        flat = np.arange(start, stop, dtype=np.int64)
        if last == 0:
            X = np.zeros((stop - start, 0), dtype=np.int64)
        else:
            digits = np.unravel_index(flat, prefix_sizes)
            X = np.stack(
                [d.astype(np.int64) + lows[i] for i, d in enumerate(digits)], axis=1
            )
        R = b[np.newaxis, :] - X @ A[:, :last].T
        lo = np.full(stop - start, lows[last], dtype=np.int64)
        hi = np.full(stop - start, highs[last], dtype=np.int64)
        feasible = np.ones(stop - start, dtype=bool)
        for f in range(A.shape[0]):
            a = int(a_last[f])
            r = R[:, f]
            if a == 0:
                feasible &= r >= 0
            elif a > 0:
                np.minimum(hi, r // a, out=hi)
            else:
                np.maximum(lo, -(r // (-a)), out=lo)
        counts = hi - lo + 1
        counts[counts < 0] = 0
        counts[~feasible] = 0
        total += int(counts.sum())
    return total


if HAS_NUMBA:

    @njit(cache=True)
    def _count_leading_slice(A, b, lows, highs, x0):
        """Count over one slice x[0] = x0; serial worker for the prange loop."""
        m = A.shape[0]
        n = A.shape[1]
        last = n - 1
        rest = 1
        for i in range(1, last):
            rest *= highs[i] - lows[i] + 1
        xs = np.empty(last, dtype=np.int64)
        xs[0] = x0
        subtotal = 0
        for flat in range(rest):
            t = flat
            for i in range(last - 1, 0, -1):
                s = highs[i] - lows[i] + 1
                xs[i] = lows[i] + t % s
                t //= s
            lo = lows[last]
            hi = highs[last]
            feasible = True
            for f in range(m):
                r = b[f]
                for i in range(last):
                    r -= A[f, i] * xs[i]
                a = A[f, last]
                if a == 0:
                    if r < 0:
                        feasible = False
                        break
                elif a > 0:
                    q = r // a
                    if q < hi:
                        hi = q
                else:
                    q = -(r // (-a))
                    if q > lo:
                        lo = q
            if feasible and lo <= hi:
                subtotal += hi - lo + 1
        return subtotal

    @njit(cache=True, parallel=True)
    def _count_numba(A, b, lows, highs):
        size0 = highs[0] - lows[0] + 1
        total = 0
        for i0 in prange(size0):
            total += _count_leading_slice(A, b, lows, highs, lows[0] + i0)
        return total

else:  # pragma: no cover

    def _count_numba(A, b, lows, highs):
        raise RuntimeError("numba backend requested but numba is unavailable")
