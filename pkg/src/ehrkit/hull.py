"""Facet enumeration, membership tests, and pulling triangulations.

Everything here is brute force by design: candidate facet hyperplanes are
enumerated over n-subsets of the vertex list, which is comfortably cheap at
desk scale (at most C(12, n) subsets).  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .errors import CapacityError, DegenerateInput, InternalConsistencyError
from .linalg import Matrix, dot, rank, solve_linear, vec_gcd, vec_sub

MAX_HULL_VERTICES = 12


@dataclass(frozen=True)
class HalfSpace:
    """Closed half-space {x : normal . x <= offset} with primitive normal."""

    normal: tuple[int, ...]
    offset: int

    def __post_init__(self):
        if all(a == 0 for a in self.normal):
            raise ValueError("half-space normal must be nonzero")

    @classmethod
    def normalized(cls, normal, offset) -> "HalfSpace":
        normal = tuple(normal)
        g = vec_gcd(normal)
        if g == 0:
            raise ValueError("half-space normal must be nonzero")
        # The facets of a lattice polytope pass through lattice points, so
        # dividing by the normal's gcd keeps the offset integral.
        if offset % g != 0:
            raise ValueError(f"offset {offset} not divisible by normal gcd {g}")
        return cls(tuple(a // g for a in normal), offset // g)

    def evaluate(self, point):
        return dot(self.normal, point)

    def holds(self, point, strict: bool = False) -> bool:
        value = self.evaluate(point)
        return value < self.offset if strict else value <= self.offset


def _normal_through(points, dim) -> tuple[int, ...] | None:
    """Integer normal of the hyperplane spanned by `dim` points, or None.

    The normal is the generalized cross product of the difference vectors,
    computed by cofactor expansion; it vanishes exactly when the points are
    affinely dependent.
    """
    if dim == 1:
        return (1,)
    base = points[0]
    diffs = [vec_sub(p, base) for p in points[1:]]
    normal = []
    for skip in range(dim):
        minor = Matrix([[row[j] for j in range(dim) if j != skip] for row in diffs])
        cof = minor.det()
        normal.append(cof if skip % 2 == 0 else -cof)
    if all(a == 0 for a in normal):
        return None
    return tuple(normal)


def facet_halfspaces(points, dim) -> tuple[HalfSpace, ...]:
    """Irredundant H-representation of the hull of a full-dimensional set.

    Every returned facet hyperplane contains at least `dim` affinely
    independent points of the input.
    """
    points = tuple(tuple(p) for p in points)
    if len(points) > MAX_HULL_VERTICES:
        raise CapacityError(
            f"{len(points)} points exceed the desk-scale limit of "
            f"{MAX_HULL_VERTICES} for facet enumeration"
        )
    found: set[HalfSpace] = set()
    for subset in combinations(points, dim):
        normal = _normal_through(subset, dim)
        if normal is None:
            continue
        offset = dot(normal, subset[0])
        below = above = False
        for p in points:
            value = dot(normal, p)
            if value < offset:
                below = True
            elif value > offset:
                above = True
            if below and above:
                break
        if below and above:
            continue
        if not below and not above:
            # All points on one hyperplane: the set is not full-dimensional.
            raise DegenerateInput("point set is not full-dimensional")
        if above:
            normal = tuple(-a for a in normal)
            offset = -offset
        found.add(HalfSpace.normalized(normal, offset))
    return tuple(sorted(found, key=lambda h: (h.normal, h.offset)))


def facets(polytope) -> tuple[HalfSpace, ...]:
    return polytope.facets


def contains(polytope, point, mode: str = "closed") -> bool:
    """Membership in the closed polytope or its interior."""
    if mode not in ("closed", "interior"):
        raise ValueError(f"mode must be 'closed' or 'interior', got {mode!r}")
    point = tuple(point)
    strict = mode == "interior"
    return all(h.holds(point, strict=strict) for h in polytope.facets)


@dataclass(frozen=True)
class Triangulation:
    """Simplicial decomposition into full-dimensional cells.

    Cells use only vertices of the triangulated polytope and have pairwise
    disjoint interiors; the exact volume-sum identity certifies this at desk
    scale.
    """

    cells: tuple

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def normalized_volume(self) -> int:
        return sum(cell.normalized_volume for cell in self.cells)

    def is_unimodular(self) -> bool:
        return all(cell.normalized_volume == 1 for cell in self.cells)


def _project_affine(points, target_dim):
    """Map points spanning a `target_dim`-flat to integer coordinates.

    Picks an affine basis from the points themselves, solves for exact
    rational coordinates, and clears denominators.  The result is affinely
    isomorphic to the input, which preserves the face lattice (all the
    triangulation recursion needs).
    """
    base = points[0]
    diffs = [vec_sub(p, base) for p in points[1:]]
    basis: list[tuple[int, ...]] = []
    for d in diffs:
        if len(basis) == target_dim:
            break
        if rank(basis + [d]) > len(basis):
            basis.append(d)
    if len(basis) != target_dim:
        raise DegenerateInput("facet points do not span the expected flat")
    basis_rows = list(zip(*basis))  # ambient_dim x target_dim column matrix
    coords = []
    for p in points:
        solution = solve_linear(basis_rows, vec_sub(p, base))
        if solution is None:
            raise InternalConsistencyError("facet point outside its own flat")
        coords.append(solution)
    denom = lcm(*(c.denominator for row in coords for c in row)) if coords else 1
    return tuple(tuple(int(c * denom) for c in row) for row in coords)


def _triangulate_indices(points, dim, order_keys=None):
    """Pulling triangulation of a full-dimensional point set, as index tuples.

    Recursively cones the pulled vertex over the triangulations of the
    facets that do not contain it.  The pulled vertex of every face, at
    every recursion depth, is the one whose ORIGINAL coordinates are
    lexicographically smallest (order_keys carries them through the
    projections), so shared faces triangulate consistently and no new
    vertices are introduced.
    """
    points = tuple(points)
    if order_keys is None:
        order_keys = points
    if len(points) == dim + 1:
        return [tuple(range(dim + 1))]
    apex = min(range(len(points)), key=lambda i: order_keys[i])
    cells = []
    for half in facet_halfspaces(points, dim):
        if half.evaluate(points[apex]) == half.offset:
            continue
        face = [i for i, p in enumerate(points) if half.evaluate(p) == half.offset]
        if dim == 1:
            # Facets of a segment are single points.
            cells.append(tuple(sorted((apex, face[0]))))
            continue
        projected = _project_affine([points[i] for i in face], dim - 1)
        face_keys = tuple(order_keys[i] for i in face)
        for sub in _triangulate_indices(projected, dim - 1, face_keys):
            cell = sorted([apex] + [face[j] for j in sub])
            cells.append(tuple(cell))
    return cells


def triangulate(polytope) -> Triangulation:
    return polytope.triangulation


def build_triangulation(polytope) -> Triangulation:
    from .polytope import LatticeSimplex

    vertices = polytope.vertices
    cells = []
    for cell_indices in _triangulate_indices(vertices, polytope.dim):
        cell = LatticeSimplex(polytope.dim, [vertices[i] for i in cell_indices])
        try:
            cell.normalized_volume
        except DegenerateInput:
            raise InternalConsistencyError(
                "triangulation produced a flat cell"
            ) from None
        cells.append(cell)
    return Triangulation(tuple(cells))


def volume(polytope) -> Fraction:
    """Exact Euclidean volume via the triangulation."""
    return polytope.volume
