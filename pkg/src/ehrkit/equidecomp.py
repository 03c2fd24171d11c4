"""Equidecomposability verification via triangulation matching.

Both polytopes are triangulated and a perfect matching of cells under
unimodular equivalence is searched for.  A successful matching certifies
equidecomposability; failure is one-sided evidence only, because finer
decompositions than our fixed pulling triangulations may still exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .ehrhart import ehrhart_polynomial
from .equivalence import EquivalenceWitness, check_equivalence, verify_witness
from .errors import DimensionMismatch, InternalConsistencyError, PreconditionError
from .linalg import as_int
from .polytope import LatticePolytope, dilate

MAX_DILATED_BOX = 10**7
MAX_CELLS = 500

NOT_A_DISPROOF = (
    "no matching exists for these two triangulations; this is one-sided "
    "evidence only, not a disproof of equidecomposability"
)


@dataclass(frozen=True)
class MatchingWitness:
    """Perfect matching of triangulation cells with per-pair witnesses.

    Left cell i is carried onto right cell pairing[i] by the transform in
    witnesses[i].
    """

    left_cells: tuple
    right_cells: tuple
    pairing: tuple[int, ...]
    witnesses: tuple[EquivalenceWitness, ...]

    @property
    def n_pairs(self) -> int:
        return len(self.pairing)

    def verify(self) -> bool:
        if sorted(self.pairing) != list(range(len(self.left_cells))):
            return False
        if len(self.left_cells) != len(self.right_cells):
            return False
        return all(
            verify_witness(left, self.right_cells[j], w)
            for left, j, w in zip(self.left_cells, self.pairing, self.witnesses)
        )


@dataclass(frozen=True)
class NoMatchingFound:
    left_cells: int
    right_cells: int
    note: str = NOT_A_DISPROOF

    def __bool__(self):
        return False


def match_triangulations(
    left: LatticePolytope, right: LatticePolytope
) -> MatchingWitness | NoMatchingFound:
    """Search for a cell-by-cell unimodular matching of the two triangulations."""
    if left.dim != right.dim:
        raise DimensionMismatch(
            f"polytopes live in different dimensions {left.dim} and {right.dim}"
        )
    if left.volume != right.volume:
        raise PreconditionError(
            f"volumes differ ({left.volume} vs {right.volume}); polytopes of "
            "unequal volume are never equidecomposable"
        )
    left_cells = left.triangulation.cells
    right_cells = right.triangulation.cells
    if len(left_cells) != len(right_cells):
        return NoMatchingFound(len(left_cells), len(right_cells))

    # Large cells have the fewest volume-compatible partners; place them first.
    order = sorted(
        range(len(left_cells)),
        key=lambda i: (-left_cells[i].normalized_volume, i),
    )
    candidates = {
        i: [
            j
            for j in range(len(right_cells))
            if right_cells[j].normalized_volume == left_cells[i].normalized_volume
        ]
        for i in order
    }
    memo: dict[tuple[int, int], EquivalenceWitness | None] = {}

    def pair_witness(i: int, j: int) -> EquivalenceWitness | None:
        key = (i, j)
        if key not in memo:
            verdict = check_equivalence(left_cells[i], right_cells[j])
            memo[key] = verdict.witness if verdict else None
        return memo[key]

    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(position: int) -> bool:
        if position == len(order):
            return True
        i = order[position]
        for j in candidates[i]:
            if j in used:
                continue
            if pair_witness(i, j) is None:
                continue
            assignment[i] = j
            used.add(j)
            if extend(position + 1):
                return True
            used.remove(j)
            del assignment[i]
        return False

    if not extend(0):
        return NoMatchingFound(len(left_cells), len(right_cells))
    pairing = tuple(assignment[i] for i in range(len(left_cells)))
    witnesses = tuple(pair_witness(i, assignment[i]) for i in range(len(left_cells)))
    matching = MatchingWitness(left_cells, right_cells, pairing, witnesses)
    if not matching.verify():
        raise InternalConsistencyError("matching search produced an invalid witness")
    return matching


@dataclass(frozen=True)
class Equidecomposable:
    matching: MatchingWitness

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def __bool__(self):
        return False


def unimodular_triangulation_check(
    left: LatticePolytope, right: LatticePolytope
) -> Equidecomposable | Inconclusive:
    """Shortcut for Ehrhart-equivalent inputs whose cells are all unimodular.

    Equal volumes force equal cell counts, and unimodular simplices are
    mutually equivalent, so any pairing works.
    """
    if left.dim != right.dim:
        raise DimensionMismatch(
            f"polytopes live in different dimensions {left.dim} and {right.dim}"
        )
    if ehrhart_polynomial(left) != ehrhart_polynomial(right):
        raise PreconditionError(
            "unimodular_triangulation_check requires Ehrhart-equivalent inputs"
        )
    left_tri = left.triangulation
    right_tri = right.triangulation
    if not left_tri.is_unimodular() or not right_tri.is_unimodular():
        worst_left = max(c.normalized_volume for c in left_tri.cells)
        worst_right = max(c.normalized_volume for c in right_tri.cells)
        return Inconclusive(
            "triangulations are not fully unimodular (largest cell volumes "
            f"{worst_left} and {worst_right})"
        )
    if left_tri.n_cells != right_tri.n_cells:
        raise InternalConsistencyError(
            "equal-volume unimodular triangulations with different cell counts"
        )
    witnesses = []
    for a, b in zip(left_tri.cells, right_tri.cells):
        verdict = check_equivalence(a, b)
        if not verdict:
            raise InternalConsistencyError(
                "unimodular cells failed to be pairwise equivalent"
            )
        witnesses.append(verdict.witness)
    matching = MatchingWitness(
        left_tri.cells,
        right_tri.cells,
        tuple(range(left_tri.n_cells)),
        tuple(witnesses),
    )
    return Equidecomposable(matching)


@dataclass(frozen=True)
class DilationOutcome:
    factor: int
    status: str  # "matched" | "not-matched" | "capacity-exceeded"
    matching: MatchingWitness | None = None


@dataclass(frozen=True)
class DilationReport:
    outcomes: tuple[DilationOutcome, ...]

    @property
    def first_success(self) -> int | None:
        for outcome in self.outcomes:
            if outcome.status == "matched":
                return outcome.factor
        return None


def _box_points(polytope: LatticePolytope, factor: int) -> int:
    spans = [
        max(v[i] for v in polytope.vertices) - min(v[i] for v in polytope.vertices)
        for i in range(polytope.dim)
    ]
    return prod(factor * s + 1 for s in spans)


def dilation_search(
    left: LatticePolytope,
    right: LatticePolytope,
    k_max: int,
    max_box_points: int = MAX_DILATED_BOX,
    max_cells: int = MAX_CELLS,
) -> DilationReport:
    """Run the matching for every dilation factor 1..k_max.

    Evidence gathering only: not-matched outcomes carry no claim beyond the
    failure of these particular triangulations to match.
    """
    k_max = as_int(k_max)
    if k_max < 1:
        raise PreconditionError(f"k_max must be at least 1, got {k_max}")
    if ehrhart_polynomial(left) != ehrhart_polynomial(right):
        raise PreconditionError(
            "dilation_search requires Ehrhart-equivalent inputs"
        )
    outcomes = []
    for k in range(1, k_max + 1):
        if max(_box_points(left, k), _box_points(right, k)) > max_box_points:
            outcomes.append(DilationOutcome(k, "capacity-exceeded"))
            continue
        scaled_left = dilate(left, k)
        scaled_right = dilate(right, k)
        if (
            scaled_left.triangulation.n_cells > max_cells
            or scaled_right.triangulation.n_cells > max_cells
        ):
            outcomes.append(DilationOutcome(k, "capacity-exceeded"))
            continue
        result = match_triangulations(scaled_left, scaled_right)
        if isinstance(result, MatchingWitness):
            outcomes.append(DilationOutcome(k, "matched", result))
        else:
            outcomes.append(DilationOutcome(k, "not-matched"))
    return DilationReport(tuple(outcomes))
