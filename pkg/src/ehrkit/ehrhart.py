"""Lattice-point counting and exact Ehrhart polynomials of integral polytopes.

The polynomial is interpolated through the counts at dilations 1..n+1 and
then cross-validated three independent ways: the constant term must be 1,
the leading coefficient must equal the triangulation volume, and the value
at n+2 must match a fresh count.  A failure of any cross-check raises
InternalConsistencyError; it can only mean a bug, never bad user input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .counting import count_box_points
from .errors import CapacityError, InternalConsistencyError, PreconditionError
from .linalg import as_exact, as_int, dot, solve_linear
from .polytope import LatticePolytope

#: Upper bound on the total prefix-scan work one polynomial may cost.
DEFAULT_MAX_WORK = 2 * 10**8


@dataclass(frozen=True)
class EhrhartPolynomial:
    """Exact polynomial with rational coefficients, highest degree first."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(as_exact(c) for c in self.coefficients)
        )
        if not self.coefficients:
            raise ValueError("polynomial needs at least a constant term")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self):
        return self.coefficients[0]

    @property
    def constant_term(self):
        return self.coefficients[-1]

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        """Exact evaluation; negative arguments are fine (reciprocity)."""
        t = as_exact(t)
        acc = Fraction(0)
        for c in self.coefficients:
            acc = acc * t + c
        return as_exact(acc)

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(poly: EhrhartPolynomial) -> str:
    """Render with exact reduced fractions, e.g. ``1/2 t^2 + 3/2 t + 1``."""
    n = poly.degree
    pieces = []
    for i, c in enumerate(poly.coefficients):
        power = n - i
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            var = "t" if power == 1 else f"t^{power}"
            body = var if mag == 1 else f"{mag} {var}"
        pieces.append((c < 0, body))
    if not pieces:
        return "0"
    negative, body = pieces[0]
    out = ("-" if negative else "") + body
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


def evaluate(poly: EhrhartPolynomial, t):
    return poly.evaluate(t)


def _normalized_inequalities(polytope: LatticePolytope):
    """Facet system and box of the polytope shifted so its minimum is 0.

    Lattice counts are invariant under integer translation, and the shift
    keeps bounding boxes small even for far-away polytopes.
    """
    shift = polytope.vertex_min
    normals = []
    offsets = []
    for half in polytope.facets:
        normals.append(half.normal)
        offsets.append(half.offset - dot(half.normal, shift))
    ranges = tuple(
        max(v[i] for v in polytope.vertices) - shift[i] for i in range(polytope.dim)
    )
    return normals, offsets, ranges


def count_points(polytope: LatticePolytope, k, mode: str = "closed") -> int:
    """Number of lattice points of k*P (closed) or of its interior."""
    if mode not in ("closed", "interior"):
        raise ValueError(f"mode must be 'closed' or 'interior', got {mode!r}")
    k = as_int(k)
    if k < 0:
        raise ValueError(f"dilation factor must be nonnegative, got {k}")
    if k == 0:
        return 1 if mode == "closed" else 0
    normals, offsets, ranges = _normalized_inequalities(polytope)
    # Integer data makes strict inequalities a . x < k b equivalent to
    # a . x <= k b - 1.
    adjust = -1 if mode == "interior" else 0
    scaled = [k * off + adjust for off in offsets]
    lows = [0] * polytope.dim
    highs = [k * r for r in ranges]
    return count_box_points(normals, scaled, lows, highs)


def _scan_work(ranges, k) -> int:
    sizes = sorted(k * r + 1 for r in ranges)
    return prod(sizes[:-1]) if len(sizes) > 1 else 1


def ehrhart_polynomial(
    polytope: LatticePolytope, max_work: int = DEFAULT_MAX_WORK
) -> EhrhartPolynomial:
    """Interpolate the lattice-count polynomial through dilations 1..n+1."""
    cached = polytope.__dict__.get("_ehrhart_memo")
    if cached is not None:
        return cached
    n = polytope.dim
    _, _, ranges = _normalized_inequalities(polytope)
    work = sum(_scan_work(ranges, k) for k in range(1, n + 3))
    if work > max_work:
        raise CapacityError(
            f"estimated scan work {work} exceeds the limit {max_work}"
        )
    nodes = range(1, n + 2)
    counts = [count_points(polytope, k) for k in nodes]
    rows = [[Fraction(k) ** p for p in range(n, -1, -1)] for k in nodes]
    solution = solve_linear(rows, counts)
    if solution is None:
        raise InternalConsistencyError("interpolation system was inconsistent")
    poly = EhrhartPolynomial(solution)

    if poly.constant_term != 1:
        raise InternalConsistencyError(
            f"constant term {poly.constant_term} != 1; counting or hull bug"
        )
    volume_coeff = Fraction(polytope.normalized_volume, factorial(n))
    if poly.leading_coefficient != volume_coeff:
        raise InternalConsistencyError(
            f"leading coefficient {poly.leading_coefficient} != volume {volume_coeff}"
        )
    if n >= 1 and poly.coefficients[1] < 0:
        # Half the boundary surface measure; never negative.
        raise InternalConsistencyError(
            f"second coefficient {poly.coefficients[1]} is negative"
        )
    probe = n + 2
    if poly.evaluate(probe) != count_points(polytope, probe):
        raise InternalConsistencyError(
            f"interpolated value at {probe} disagrees with a fresh count"
        )
    polytope.__dict__["_ehrhart_memo"] = poly
    return poly


def reciprocity_check(polytope: LatticePolytope, k_max: int) -> bool:
    """Whether L(-k) equals (-1)^n times the interior count, for k <= k_max."""
    k_max = as_int(k_max)
    if k_max < 1:
        raise PreconditionError(f"k_max must be at least 1, got {k_max}")
    poly = ehrhart_polynomial(polytope)
    sign = (-1) ** polytope.dim
    return all(
        poly.evaluate(-k) == sign * count_points(polytope, k, "interior")
        for k in range(1, k_max + 1)
    )
