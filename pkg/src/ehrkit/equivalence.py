"""Deciding unimodular equivalence of integral simplices.

Two n-simplices are unimodularly equivalent iff some column permutation of
the target definition matrix, multiplied by the inverse of the source
definition matrix, is an integer matrix of determinant +-1.  The search
enumerates all (n+1)! permutations in lexicographic order and returns a
fully verified witness at the first success.

The ``equal_volume`` mode drops the determinant test: when the two simplices
have the same volume (checked as a precondition), integrality of the
candidate matrix already forces determinant +-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .errors import (
    CapacityError,
    DegenerateInput,
    DimensionMismatch,
    InternalConsistencyError,
    PreconditionError,
)
from .linalg import Matrix
from .polytope import AffineUnimodularMap, LatticeSimplex

#: (n+1)! explodes past desk scale beyond this ambient dimension.
MAX_SEARCH_DIM = 8

MODES = ("full", "equal_volume")


@dataclass(frozen=True)
class EquivalenceWitness:
    """Certified equivalence: transform maps source vertex i to target
    vertex vertex_bijection[i], and the certificate is the homogeneous
    block matrix [[B, c], [0, 1]] realizing it."""

    transform: AffineUnimodularMap
    vertex_bijection: tuple[int, ...]
    certificate: Matrix


@dataclass(frozen=True)
class Equivalent:
    witness: EquivalenceWitness
    permutations_tried: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotEquivalent:
    permutations_tried: int

    def __bool__(self):
        return False


Verdict = Equivalent | NotEquivalent


def _require_simplex(value, label: str) -> LatticeSimplex:
    if not isinstance(value, LatticeSimplex):
        raise PreconditionError(f"{label} must be a LatticeSimplex, got {type(value).__name__}")
    return value


def check_equivalence(
    source: LatticeSimplex, target: LatticeSimplex, mode: str = "full"
) -> Verdict:
    """Decide unimodular equivalence by exhaustive permutation search."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    _require_simplex(source, "source")
    _require_simplex(target, "target")
    if source.dim != target.dim:
        raise DimensionMismatch(
            f"simplices live in different dimensions {source.dim} and {target.dim}"
        )
    n = source.dim
    if n > MAX_SEARCH_DIM:
        raise CapacityError(
            f"dimension {n} needs {factorial(n + 1)} permutations; desk-scale "
            f"limit is dimension {MAX_SEARCH_DIM}"
        )
    d_source = source.definition_matrix
    d_target = target.definition_matrix
    det_source = d_source.det()
    det_target = d_target.det()
    if det_source == 0 or det_target == 0:
        raise DegenerateInput("simplex vertices are affinely dependent")
    if mode == "equal_volume" and abs(det_source) != abs(det_target):
        raise PreconditionError(
            "equal_volume mode requires simplices of equal volume "
            f"(normalized volumes {abs(det_source)} and {abs(det_target)})"
        )
    # N = (permuted D_T) * D_S^-1 stays in integer arithmetic throughout:
    # with adj = det(D_S) * D_S^-1, integrality of N is entrywise
    # divisibility of (permuted D_T) * adj by det(D_S).
    adjugate = d_source.adjugate().rows
    divisor = det_source
    target_rows = d_target.rows
    size = n + 1

    tried = 0
    for perm in permutations(range(size)):
        tried += 1
        candidate_rows = []
        integral = True
        for i in range(size):
            row = target_rows[i]
            out_row = []
            for j in range(size):
                acc = 0
                for k in range(size):
                    acc += row[perm[k]] * adjugate[k][j]
                if acc % divisor:
                    integral = False
                    break
                out_row.append(acc // divisor)
            if not integral:
                break
            candidate_rows.append(out_row)
        if not integral:
            continue
        candidate = Matrix(candidate_rows)
        if mode == "full" and abs(candidate.det()) != 1:
            continue
        witness = _extract_witness(candidate, perm, n)
        if not verify_witness(source, target, witness):
            raise InternalConsistencyError(
                "permutation search produced a witness that does not verify"
            )
        return Equivalent(witness, tried)
    return NotEquivalent(tried)


def _extract_witness(candidate: Matrix, perm, n: int) -> EquivalenceWitness:
    bottom = candidate.row(n)
    if bottom != (0,) * n + (1,):
        # Guaranteed for full-dimensional simplices; anything else is a bug.
        raise InternalConsistencyError(
            f"homogeneous certificate has bottom row {bottom}"
        )
    if abs(candidate.det()) != 1:
        raise InternalConsistencyError(
            f"certificate determinant {candidate.det()} is not +-1"
        )
    linear = Matrix([candidate.row(i)[:n] for i in range(n)])
    translation = tuple(candidate[i, n] for i in range(n))
    return EquivalenceWitness(
        transform=AffineUnimodularMap(linear, translation),
        vertex_bijection=tuple(perm),
        certificate=candidate,
    )


def verify_witness(
    source: LatticeSimplex, target: LatticeSimplex, witness: EquivalenceWitness
) -> bool:
    """Re-check a claimed equivalence from scratch; never raises on bad input."""
    try:
        n = source.dim
        if target.dim != n:
            return False
        bijection = witness.vertex_bijection
        if sorted(bijection) != list(range(n + 1)):
            return False
        certificate = witness.certificate
        if certificate.shape != (n + 1, n + 1) or not certificate.is_integral():
            return False
        if abs(certificate.det()) != 1:
            return False
        if certificate.row(n) != (0,) * n + (1,):
            return False
        transform = witness.transform
        if abs(transform.linear.det()) != 1:
            return False
        for i in range(n):
            if certificate.row(i) != transform.linear.row(i) + (transform.translation[i],):
                return False
        return all(
            transform(source.vertices[i]) == target.vertices[bijection[i]]
            for i in range(n + 1)
        )
    except Exception:
        return False


def invert_witness(witness: EquivalenceWitness) -> EquivalenceWitness:
    """Witness for the reverse direction (target back to source)."""
    inverse_map = witness.transform.inverse()
    n = inverse_map.dim
    bijection = witness.vertex_bijection
    inverse_bijection = tuple(bijection.index(i) for i in range(n + 1))
    certificate = Matrix(
        [inverse_map.linear.row(i) + (inverse_map.translation[i],) for i in range(n)]
        + [(0,) * n + (1,)]
    )
    return EquivalenceWitness(inverse_map, inverse_bijection, certificate)


def compose_witnesses(
    outer: EquivalenceWitness, inner: EquivalenceWitness
) -> EquivalenceWitness:
    """Witness from S to R given witnesses inner: S->T and outer: T->R."""
    transform = outer.transform.compose(inner.transform)
    n = transform.dim
    bijection = tuple(outer.vertex_bijection[j] for j in inner.vertex_bijection)
    certificate = Matrix(
        [transform.linear.row(i) + (transform.translation[i],) for i in range(n)]
        + [(0,) * n + (1,)]
    )
    return EquivalenceWitness(transform, bijection, certificate)


def equivalence_classes(simplices, mode: str = "full") -> list[list[int]]:
    """Partition indices of the given simplices into equivalence classes.

    Pairwise checks are shortcut with union-find: members already known to
    be equivalent are never compared again.
    """
    simplices = list(simplices)
    for s in simplices:
        _require_simplex(s, "every input")
    if simplices:
        dim = simplices[0].dim
        if any(s.dim != dim for s in simplices):
            raise DimensionMismatch("all simplices must share one dimension")

    parent = list(range(len(simplices)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(simplices)):
        for j in range(i + 1, len(simplices)):
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            if check_equivalence(simplices[i], simplices[j], mode=mode):
                parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(len(simplices)):
        groups.setdefault(find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]
