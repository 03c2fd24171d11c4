"""Discovery of Ehrhart-equivalent families by seeded random mutation.

Vertex sets are perturbed one coordinate at a time, every valid mutant gets
its exact Ehrhart polynomial, and polytopes are grouped by coefficient
vector.  Groups of two or more are genuine collisions: the key is an exact
rational tuple, so equal keys mean equal polynomials, not hash luck.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .ehrhart import EhrhartPolynomial, ehrhart_polynomial
from .errors import CapacityError, DegenerateInput, DimensionMismatch
from .polytope import LatticePolytope, make_polytope

logger = logging.getLogger(__name__)


class Degenerate:
    """Sentinel for a mutation that failed polytope validation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Degenerate"

    def __bool__(self):
        return False


DEGENERATE = Degenerate()


@dataclass(frozen=True)
class MutationPolicy:
    """How a search run perturbs vertex sets.

    One step picks a uniformly random vertex and coordinate and adds a delta
    drawn uniformly from [delta_min, delta_max].  Mutations always stay
    integral; degenerate results are discarded.
    """

    delta_min: int = -2
    delta_max: int = 2
    steps: int = 200
    seed: int = 0
    vertex_rule: str = "uniform"

    def __post_init__(self):
        if self.delta_min > self.delta_max:
            raise ValueError("delta_min must not exceed delta_max")
        if self.steps < 0:
            raise ValueError("step budget must be nonnegative")
        if self.vertex_rule != "uniform":
            raise ValueError(f"unsupported vertex rule {self.vertex_rule!r}")


@dataclass(frozen=True)
class CollisionClass:
    key: EhrhartPolynomial
    members: tuple[LatticePolytope, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def perturb(
    polytope: LatticePolytope, vertex_index: int, coord_index: int, delta: int
) -> LatticePolytope | Degenerate:
    """Add delta to one coordinate of one vertex and revalidate."""
    vertices = [list(v) for v in polytope.vertices]
    vertices[vertex_index][coord_index] += delta
    try:
        return make_polytope(polytope.dim, vertices)
    except DegenerateInput:
        return DEGENERATE


def mutate(
    polytope: LatticePolytope, policy: MutationPolicy, rng: random.Random
) -> LatticePolytope | Degenerate:
    """One random perturbation step under the policy."""
    vertex_index = rng.randrange(polytope.n_vertices)
    coord_index = rng.randrange(polytope.dim)
    delta = rng.randint(policy.delta_min, policy.delta_max)
    return perturb(polytope, vertex_index, coord_index, delta)


def _identity_key(polytope: LatticePolytope):
    return (polytope.dim, frozenset(polytope.vertices))


def search(seeds, policy: MutationPolicy) -> list[CollisionClass]:
    """Grow a pool of mutants from the seeds and group by exact polynomial.

    Deterministic for a fixed policy seed.  Mutants whose polynomial would
    exceed the counting capacity guard are skipped (and logged), not fatal.
    Only classes with at least two members are reported, largest first.
    """
    pool: list[LatticePolytope] = []
    seen: set = set()
    for seed in seeds:
        validated = make_polytope(seed.dim, seed.vertices)
        key = _identity_key(validated)
        if key not in seen:
            seen.add(key)
            pool.append(validated)
    if not pool:
        return []
    dim = pool[0].dim
    if any(p.dim != dim for p in pool):
        raise DimensionMismatch("all seeds must share one dimension")

    rng = random.Random(policy.seed)
    for _ in range(policy.steps):
        parent = pool[rng.randrange(len(pool))]
        child = mutate(parent, policy, rng)
        if child is DEGENERATE:
            continue
        key = _identity_key(child)
        if key not in seen:
            seen.add(key)
            pool.append(child)

    groups: dict[tuple, list[LatticePolytope]] = {}
    keys: dict[tuple, EhrhartPolynomial] = {}
    skipped = 0
    for polytope in pool:
        try:
            poly = ehrhart_polynomial(polytope)
        except CapacityError:
            skipped += 1
            continue
        groups.setdefault(poly.coefficients, []).append(polytope)
        keys.setdefault(poly.coefficients, poly)
    if skipped:
        logger.info("skipped %d mutants over the counting capacity guard", skipped)

    classes = [
        CollisionClass(keys[coeffs], tuple(members))
        for coeffs, members in groups.items()
        if len(members) >= 2
    ]
    classes.sort(key=lambda c: (-c.size, c.key.coefficients))
    return classes
