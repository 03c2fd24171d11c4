"""Command-line front end.

Subcommands: ``ehrhart``, ``equiv``, ``equidecomp``, ``pyramid``, ``search``.
Every numeric value is printed as an exact reduced fraction.  Exit codes:
0 a verdict was computed (whatever it says), 1 usage or parse error,
2 internal consistency error (a bug, never bad input).

Environment: ``EHRKIT_BACKEND`` selects the counting backend
(numba/numpy/python) and ``EHRKIT_THREADS`` caps the numba thread count.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .documents import (
    document_from_polytope,
    emit_text,
    load_document,
    to_polytope,
)
from .ehrhart import ehrhart_polynomial, format_polynomial, reciprocity_check
from .equidecomp import MatchingWitness, dilation_search, match_triangulations
from .equivalence import Equivalent, check_equivalence
from .errors import (
    DegenerateInput,
    DocumentParseError,
    EhrkitError,
    InternalConsistencyError,
)
from .polytope import LatticeSimplex, pyramid_lift
from . import collisions

USAGE_EXIT = 1
INTERNAL_EXIT = 2


class UsageError(EhrkitError):
    pass


def _load(path):
    document = load_document(path)
    polytope = to_polytope(document)
    name = document.name or str(path)
    return polytope, name


def _load_simplex(path, command):
    polytope, name = _load(path)
    if not isinstance(polytope, LatticeSimplex):
        raise UsageError(
            f"{path}: {command} needs a simplex ({polytope.dim + 1} vertices in "
            f"dimension {polytope.dim}), got {polytope.n_vertices} vertices; "
            "try the equidecomp command for general polytopes"
        )
    return polytope, name


def _matrix_lines(matrix, indent="  "):
    widths = [
        max(len(str(matrix[i, j])) for i in range(matrix.n_rows))
        for j in range(matrix.n_cols)
    ]
    return [
        indent
        + "[ "
        + "  ".join(str(x).rjust(w) for x, w in zip(row, widths))
        + " ]"
        for row in matrix.rows
    ]


def _witness_payload(witness):
    return {
        "linear": [list(row) for row in witness.transform.linear.rows],
        "translation": list(witness.transform.translation),
        "vertex_bijection": list(witness.vertex_bijection),
        "certificate": [list(row) for row in witness.certificate.rows],
    }


def _matching_payload(matching: MatchingWitness):
    return {
        "n_pairs": matching.n_pairs,
        "pairs": [
            {
                "left_cell": [list(v) for v in left.vertices],
                "right_cell": [list(v) for v in matching.right_cells[j].vertices],
                "witness": _witness_payload(w),
            }
            for left, j, w in zip(
                matching.left_cells, matching.pairing, matching.witnesses
            )
        ],
    }


def _emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in report.pop("_text"):
            print(line)


def cmd_ehrhart(args) -> int:
    started = time.perf_counter()
    polytope, name = _load(args.file)
    poly = ehrhart_polynomial(polytope)
    reciprocity = reciprocity_check(polytope, 2)
    elapsed = time.perf_counter() - started
    rendered = format_polynomial(poly)
    report = {
        "command": "ehrhart",
        "input": str(args.file),
        "name": name,
        "dim": polytope.dim,
        "polynomial": rendered,
        "coefficients": [str(c) for c in poly.coefficients],
        "normalized_volume": str(polytope.normalized_volume),
        "reciprocity_k2": reciprocity,
        "elapsed_s": round(elapsed, 6),
        "_text": [
            f"polytope: {name} (dim {polytope.dim}, {polytope.n_vertices} vertices)",
            f"ehrhart polynomial: {rendered}",
            f"coefficients: {', '.join(str(c) for c in poly.coefficients)}",
            f"normalized volume: {polytope.normalized_volume}",
            f"reciprocity check (k <= 2): {'pass' if reciprocity else 'FAIL'}",
            f"elapsed: {elapsed:.3f}s",
        ],
    }
    _emit(report, args.json)
    return 0


def cmd_equiv(args) -> int:
    started = time.perf_counter()
    source, source_name = _load_simplex(args.source, "equiv")
    target, target_name = _load_simplex(args.target, "equiv")
    mode = args.mode.replace("-", "_")
    verdict = check_equivalence(source, target, mode=mode)
    elapsed = time.perf_counter() - started
    report = {
        "command": "equiv",
        "mode": args.mode,
        "inputs": [str(args.source), str(args.target)],
        "permutations_tried": verdict.permutations_tried,
        "elapsed_s": round(elapsed, 6),
    }
    text = [f"source: {source_name}", f"target: {target_name}", f"mode: {args.mode}"]
    if isinstance(verdict, Equivalent):
        witness = verdict.witness
        permuted_target = target.definition_matrix.permute_columns(
            witness.vertex_bijection
        )
        report["verdict"] = "equivalent"
        report["witness"] = _witness_payload(witness)
        report["permuted_target"] = [list(row) for row in permuted_target.rows]
        text += [
            f"verdict: equivalent (found at permutation "
            f"{verdict.permutations_tried} of the search order)",
            f"vertex bijection (source i -> target): {list(witness.vertex_bijection)}",
            "certificate matrix:",
            *_matrix_lines(witness.certificate),
            "permuted target matrix:",
            *_matrix_lines(permuted_target),
        ]
    else:
        report["verdict"] = "not-equivalent"
        text.append(
            f"verdict: not-equivalent ({verdict.permutations_tried} permutations tried)"
        )
    text.append(f"elapsed: {elapsed:.3f}s")
    report["_text"] = text
    _emit(report, args.json)
    return 0


def cmd_equidecomp(args) -> int:
    started = time.perf_counter()
    left, left_name = _load(args.left)
    right, right_name = _load(args.right)
    text = [f"left: {left_name}", f"right: {right_name}"]
    report = {
        "command": "equidecomp",
        "inputs": [str(args.left), str(args.right)],
    }

    if left.volume != right.volume:
        verdict = "not-equidecomposable"
        report["verdict"] = verdict
        report["obstruction"] = "volume"
        text += [
            f"verdict: {verdict} (volume obstruction: {left.volume} != {right.volume})",
        ]
    elif ehrhart_polynomial(left) != ehrhart_polynomial(right):
        verdict = "not-equidecomposable"
        report["verdict"] = verdict
        report["obstruction"] = "ehrhart"
        text += [
            f"verdict: {verdict} (Ehrhart obstruction: equidecomposable polytopes "
            "are Ehrhart-equivalent, these are not)",
        ]
    elif args.dilate:
        dilation = dilation_search(left, right, args.dilate)
        report["dilation_report"] = [
            {
                "k": outcome.factor,
                "outcome": outcome.status,
                **(
                    {"matching": _matching_payload(outcome.matching)}
                    if outcome.matching is not None
                    else {}
                ),
            }
            for outcome in dilation.outcomes
        ]
        report["first_success"] = dilation.first_success
        report["verdict"] = (
            "matched" if dilation.first_success is not None else "no-matching-found"
        )
        text.append(f"dilation search over k = 1..{args.dilate}:")
        for outcome in dilation.outcomes:
            line = f"  k={outcome.factor}: {outcome.status}"
            if outcome.matching is not None:
                line += f" ({outcome.matching.n_pairs} cell pairs, witnesses verified)"
            text.append(line)
        text.append(f"first success: {dilation.first_success}")
        if any(o.status != "matched" for o in dilation.outcomes):
            text.append(
                "note: evidence only; a not-matched or capacity-exceeded entry "
                "never disproves equidecomposability"
            )
    else:
        result = match_triangulations(left, right)
        if isinstance(result, MatchingWitness):
            report["verdict"] = "matched"
            report["matching"] = _matching_payload(result)
            text.append(
                f"verdict: matched ({result.n_pairs} cell pairs, witnesses verified)"
            )
        else:
            report["verdict"] = "no-matching-found"
            report["note"] = result.note
            text += [
                "verdict: no-matching-found "
                f"({result.left_cells} vs {result.right_cells} cells)",
                f"note: evidence only; {result.note}",
            ]
    elapsed = time.perf_counter() - started
    report["elapsed_s"] = round(elapsed, 6)
    text.append(f"elapsed: {elapsed:.3f}s")
    report["_text"] = text
    _emit(report, args.json)
    return 0


def cmd_pyramid(args) -> int:
    simplex, name = _load_simplex(args.file, "pyramid")
    lifted = pyramid_lift(simplex, args.target_dim)
    lifted_name = f"{name}_pyramid{args.target_dim}" if name else None
    rendered = emit_text(document_from_polytope(lifted, lifted_name))
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0


def cmd_search(args) -> int:
    started = time.perf_counter()
    seeds = []
    for path in args.seeds:
        polytope, _ = _load(path)
        seeds.append(polytope)
    policy = collisions.MutationPolicy(steps=args.budget, seed=args.seed)
    classes = collisions.search(seeds, policy)
    elapsed = time.perf_counter() - started
    report = {
        "command": "search",
        "seeds": [str(p) for p in args.seeds],
        "budget": args.budget,
        "seed": args.seed,
        "classes": [
            {
                "key": format_polynomial(cls.key),
                "coefficients": [str(c) for c in cls.key.coefficients],
                "members": [
                    [list(v) for v in sorted(member.vertices)]
                    for member in cls.members
                ],
            }
            for cls in classes
        ],
        "elapsed_s": round(elapsed, 6),
    }
    text = [
        f"seeds: {len(seeds)}, mutation budget: {args.budget}, rng seed: {args.seed}",
        f"collision classes found: {len(classes)}",
    ]
    for idx, cls in enumerate(classes, start=1):
        text.append(f"class {idx}: {cls.size} members, key {format_polynomial(cls.key)}")
        for member in cls.members:
            text.append("  " + " ".join(str(v) for v in sorted(member.vertices)))
    text.append(f"elapsed: {elapsed:.3f}s")
    report["_text"] = text
    _emit(report, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehrkit",
        description=(
            "Exact-arithmetic toolkit for integral lattice polytopes: Ehrhart "
            "polynomials, unimodular equivalence, and equidecomposability."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial of a polytope file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(run=cmd_ehrhart)

    p = sub.add_parser("equiv", help="decide unimodular equivalence of two simplices")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument(
        "--mode",
        choices=["full", "equal-volume"],
        default="full",
        help="equal-volume drops the determinant check (requires equal volumes)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser(
        "equidecomp", help="search for a cell matching certifying equidecomposability"
    )
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument(
        "--dilate",
        type=int,
        metavar="K_MAX",
        help="also run the matching on every dilation 1..K_MAX",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_equidecomp)

    p = sub.add_parser("pyramid", help="lift a simplex to a higher-dimensional pyramid")
    p.add_argument("file")
    p.add_argument("--target-dim", type=int, required=True)
    p.add_argument("--output", "-o", help="write the document here instead of stdout")
    p.set_defaults(run=cmd_pyramid)

    p = sub.add_parser("search", help="find Ehrhart collisions by seeded mutation")
    p.add_argument("seeds", nargs="*", help="seed polytope files")
    p.add_argument("--budget", type=int, default=0, help="number of mutation steps")
    p.add_argument("--seed", type=int, default=0, help="rng seed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return INTERNAL_EXIT
    except (UsageError, DocumentParseError, DegenerateInput, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except EhrkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    raise SystemExit(main())
