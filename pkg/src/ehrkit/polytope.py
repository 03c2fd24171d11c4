"""Core domain objects: integral polytopes, simplices, and unimodular maps.

A polytope is stored by its irredundant vertex list.  Vertex order is
preserved (the equivalence search needs ordered definition matrices), but
equality between polytopes is vertex-set equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CapacityError,
    DegenerateInput,
    DimensionMismatch,
    PreconditionError,
)
from .linalg import Matrix, as_int, rank, vec_add, vec_sub


class LatticePolytope:
    """Full-dimensional integral polytope given by its vertices.

    Instances are immutable.  Use :func:`make_polytope` to build one from an
    untrusted point list; the constructor itself trusts its input and only
    runs cheap sanity checks.
    """

    def __init__(self, dim: int, vertices):
        vertices = tuple(tuple(v) for v in vertices)
        if dim < 1:
            raise DimensionMismatch("dimension must be at least 1")
        if any(len(v) != dim for v in vertices):
            raise DimensionMismatch(f"every vertex must have length {dim}")
        if len(vertices) < dim + 1:
            raise DegenerateInput(
                f"a full-dimensional polytope in dimension {dim} needs at least "
                f"{dim + 1} vertices, got {len(vertices)}"
            )
        self._dim = dim
        self._vertices = vertices

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def is_simplex(self) -> bool:
        return len(self._vertices) == self._dim + 1

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope)
            and self._dim == other._dim
            and frozenset(self._vertices) == frozenset(other._vertices)
        )

    def __hash__(self):
        return hash((self._dim, frozenset(self._vertices)))

    def __repr__(self):
        kind = "LatticeSimplex" if isinstance(self, LatticeSimplex) else "LatticePolytope"
        pts = ", ".join(str(v) for v in self._vertices)
        return f"{kind}(dim={self._dim}, vertices=[{pts}])"

    def translate(self, offset) -> "LatticePolytope":
        offset = tuple(as_int(x) for x in offset)
        if len(offset) != self._dim:
            raise DimensionMismatch("translation vector has wrong length")
        moved = [vec_add(v, offset) for v in self._vertices]
        return type(self)(self._dim, moved)

    @cached_property
    def vertex_min(self) -> tuple[int, ...]:
        """Coordinate-wise minimum over all vertices."""
        return tuple(min(v[i] for v in self._vertices) for i in range(self._dim))

    @cached_property
    def facets(self):
        from .hull import facet_halfspaces

        return facet_halfspaces(self._vertices, self._dim)

    @cached_property
    def triangulation(self):
        from .hull import build_triangulation

        return build_triangulation(self)

    @cached_property
    def normalized_volume(self) -> int:
        """n! times the Euclidean volume; summed over triangulation cells."""
        return self.triangulation.normalized_volume

    @cached_property
    def volume(self):
        from fractions import Fraction
        from math import factorial

        return Fraction(self.normalized_volume, factorial(self._dim))

    def contains(self, point, mode: str = "closed") -> bool:
        from .hull import contains

        return contains(self, point, mode)


class LatticeSimplex(LatticePolytope):
    """Integral n-simplex: exactly n+1 affinely independent vertices."""

    def __init__(self, dim: int, vertices):
        super().__init__(dim, vertices)
        if len(self._vertices) != dim + 1:
            raise DegenerateInput(
                f"a {dim}-simplex has {dim + 1} vertices, got {len(self._vertices)}"
            )

    @cached_property
    def definition_matrix(self) -> Matrix:
        """Columns are the vertices in stored order, with a final row of ones."""
        columns = [v + (1,) for v in self._vertices]
        return Matrix.from_columns(columns)

    @cached_property
    def normalized_volume(self) -> int:
        nv = abs(self.definition_matrix.det())
        if nv == 0:
            raise DegenerateInput("simplex vertices are affinely dependent")
        return nv


def make_polytope(dim: int, points) -> LatticePolytope:
    """Validate an integral point list into a polytope.

    Duplicate points are collapsed silently and redundant points (anything in
    the convex hull of the remaining ones) are dropped, preserving first-seen
    order.  Raises :class:`DegenerateInput` unless the points affinely span
    the whole space.  Returns a :class:`LatticeSimplex` when exactly dim+1
    vertices survive.
    """
    dim = as_int(dim)
    if dim < 1:
        raise DimensionMismatch("dimension must be at least 1")
    from .hull import MAX_HULL_VERTICES, facet_halfspaces

    seen: dict[tuple[int, ...], None] = {}
    for p in points:
        q = tuple(as_int(x) for x in p)
        if len(q) != dim:
            raise DimensionMismatch(
                f"point {q} has length {len(q)}, expected {dim}"
            )
        seen.setdefault(q)
    unique = list(seen)
    if len(unique) > MAX_HULL_VERTICES:
        raise CapacityError(
            f"{len(unique)} points exceed the desk-scale limit of "
            f"{MAX_HULL_VERTICES} hull vertices"
        )
    if len(unique) < dim + 1:
        raise DegenerateInput(
            f"need at least {dim + 1} distinct points in dimension {dim}, "
            f"got {len(unique)}"
        )
    origin = unique[0]
    if rank([vec_sub(p, origin) for p in unique[1:]]) < dim:
        raise DegenerateInput("points do not affinely span the ambient space")

    # A point of the set is a hull vertex iff the facet normals tight at it
    # span the whole space.
    halfspaces = facet_halfspaces(tuple(unique), dim)
    vertices = []
    for p in unique:
        tight = [h.normal for h in halfspaces if h.evaluate(p) == h.offset]
        if len(tight) >= dim and rank(tight) == dim:
            vertices.append(p)
    if len(vertices) == dim + 1:
        return LatticeSimplex(dim, vertices)
    return LatticePolytope(dim, vertices)


@dataclass(frozen=True)
class AffineUnimodularMap:
    """Lattice-preserving affine bijection v -> A v + b with |det A| = 1."""

    linear: Matrix
    translation: tuple[int, ...]

    def __post_init__(self):
        if not self.linear.is_square:
            raise DimensionMismatch("linear part must be square")
        if not self.linear.is_integral():
            raise ValueError("linear part must have integer entries")
        object.__setattr__(
            self, "translation", tuple(as_int(x) for x in self.translation)
        )
        if len(self.translation) != self.linear.n_rows:
            raise DimensionMismatch("translation length must match linear part")
        if abs(self.linear.det()) != 1:
            raise ValueError(
                f"linear part must have determinant +-1, got {self.linear.det()}"
            )

    @classmethod
    def identity(cls, dim: int) -> "AffineUnimodularMap":
        return cls(Matrix.identity(dim), (0,) * dim)

    @classmethod
    def translation_by(cls, offset) -> "AffineUnimodularMap":
        offset = tuple(offset)
        return cls(Matrix.identity(len(offset)), offset)

    @property
    def dim(self) -> int:
        return self.linear.n_rows

    def __call__(self, point) -> tuple[int, ...]:
        return vec_add(self.linear.apply(point), self.translation)

    def compose(self, inner: "AffineUnimodularMap") -> "AffineUnimodularMap":
        """Map equal to applying `inner` first, then self."""
        return AffineUnimodularMap(
            self.linear @ inner.linear,
            vec_add(self.linear.apply(inner.translation), self.translation),
        )

    def inverse(self) -> "AffineUnimodularMap":
        inv = self.linear.inv()
        if not inv.is_integral():
            raise AssertionError("inverse of a unimodular matrix must be integral")
        return AffineUnimodularMap(
            inv, tuple(-x for x in inv.apply(self.translation))
        )


def apply_map(transform: AffineUnimodularMap, polytope: LatticePolytope) -> LatticePolytope:
    """Image polytope; vertex order is preserved under the map."""
    if transform.dim != polytope.dim:
        raise DimensionMismatch(
            f"map on dimension {transform.dim} applied to polytope of "
            f"dimension {polytope.dim}"
        )
    return type(polytope)(polytope.dim, [transform(v) for v in polytope.vertices])


def dilate(polytope: LatticePolytope, factor: int) -> LatticePolytope:
    """Scale every vertex by a positive integer factor."""
    factor = as_int(factor)
    if factor < 1:
        raise PreconditionError(
            f"dilation factor must be a positive integer, got {factor}"
        )
    return type(polytope)(
        polytope.dim, [tuple(factor * x for x in v) for v in polytope.vertices]
    )


def definition_matrix(simplex: LatticeSimplex) -> Matrix:
    return simplex.definition_matrix


def normalized_volume(simplex: LatticeSimplex) -> int:
    return simplex.normalized_volume


def pyramid_lift(simplex: LatticeSimplex, target_dim: int) -> LatticeSimplex:
    """Lift a d-simplex to an n-simplex by zero-padding and adjoining the
    standard basis vectors of the new coordinates as apexes."""
    target_dim = as_int(target_dim)
    d = simplex.dim
    if target_dim <= d:
        raise DimensionMismatch(
            f"target dimension {target_dim} must exceed the simplex dimension {d}"
        )
    pad = (0,) * (target_dim - d)
    vertices = [v + pad for v in simplex.vertices]
    for axis in range(d, target_dim):
        vertices.append(tuple(1 if i == axis else 0 for i in range(target_dim)))
    return LatticeSimplex(target_dim, vertices)


def lift_map(transform: AffineUnimodularMap, target_dim: int) -> AffineUnimodularMap:
    """Lift a base-space unimodular map to one acting on lifted pyramids.

    The lifted map sends the padded base plane by the original map and fixes
    each adjoined apex basis vector, so it carries the pyramid lift of S to
    the pyramid lift of the image of S.
    """
    target_dim = as_int(target_dim)
    d = transform.dim
    if target_dim <= d:
        raise DimensionMismatch(
            f"target dimension {target_dim} must exceed the map dimension {d}"
        )
    extra = target_dim - d
    b = transform.translation
    rows = []
    for i in range(d):
        rows.append(transform.linear.row(i) + (-b[i],) * extra)
    for i in range(extra):
        rows.append((0,) * d + tuple(1 if j == i else 0 for j in range(extra)))
    return AffineUnimodularMap(Matrix(rows), b + (0,) * extra)
