"""Exact-arithmetic toolkit for integral lattice polytopes.

Computes Ehrhart polynomials by exact interpolation of lattice counts,
decides unimodular equivalence of integral simplices with certified
witnesses, verifies equidecomposability by triangulation matching, builds
pyramid lifts, and searches for Ehrhart-equivalent families.  Everything is
integer or rational arithmetic; no floating point anywhere.
"""

from .collisions import CollisionClass, MutationPolicy, mutate, perturb, search
from .counting import active_backend, available_backends, count_box_points
from .documents import (
    PolytopeDocument,
    document_from_polytope,
    emit_json,
    emit_text,
    load_document,
    parse_document,
    to_polytope,
)
from .ehrhart import (
    EhrhartPolynomial,
    count_points,
    ehrhart_polynomial,
    evaluate,
    format_polynomial,
    reciprocity_check,
)
from .equidecomp import (
    DilationOutcome,
    DilationReport,
    Equidecomposable,
    Inconclusive,
    MatchingWitness,
    NoMatchingFound,
    dilation_search,
    match_triangulations,
    unimodular_triangulation_check,
)
from .equivalence import (
    Equivalent,
    EquivalenceWitness,
    NotEquivalent,
    check_equivalence,
    compose_witnesses,
    equivalence_classes,
    invert_witness,
    verify_witness,
)
from .errors import (
    CapacityError,
    DegenerateInput,
    DimensionMismatch,
    DocumentParseError,
    EhrkitError,
    InternalConsistencyError,
    PreconditionError,
    SingularMatrixError,
)
from .hull import HalfSpace, Triangulation, contains, facets, triangulate, volume
from .linalg import Matrix, det, invert, is_integral, matmul
from .polytope import (
    AffineUnimodularMap,
    LatticePolytope,
    LatticeSimplex,
    apply_map,
    definition_matrix,
    dilate,
    lift_map,
    make_polytope,
    normalized_volume,
    pyramid_lift,
)

__version__ = "0.1.0"

__all__ = [
    "AffineUnimodularMap",
    "CapacityError",
    "CollisionClass",
    "DegenerateInput",
    "DilationOutcome",
    "DilationReport",
    "DimensionMismatch",
    "DocumentParseError",
    "EhrhartPolynomial",
    "EhrkitError",
    "Equidecomposable",
    "EquivalenceWitness",
    "Equivalent",
    "HalfSpace",
    "Inconclusive",
    "InternalConsistencyError",
    "LatticePolytope",
    "LatticeSimplex",
    "MatchingWitness",
    "Matrix",
    "MutationPolicy",
    "NoMatchingFound",
    "NotEquivalent",
    "PolytopeDocument",
    "PreconditionError",
    "SingularMatrixError",
    "Triangulation",
    "active_backend",
    "apply_map",
    "available_backends",
    "check_equivalence",
    "compose_witnesses",
    "contains",
    "count_box_points",
    "count_points",
    "definition_matrix",
    "det",
    "dilate",
    "dilation_search",
    "document_from_polytope",
    "ehrhart_polynomial",
    "emit_json",
    "emit_text",
    "equivalence_classes",
    "evaluate",
    "facets",
    "format_polynomial",
    "invert",
    "invert_witness",
    "is_integral",
    "lift_map",
    "load_document",
    "make_polytope",
    "match_triangulations",
    "matmul",
    "mutate",
    "normalized_volume",
    "parse_document",
    "perturb",
    "pyramid_lift",
    "reciprocity_check",
    "search",
    "to_polytope",
    "triangulate",
    "unimodular_triangulation_check",
    "verify_witness",
    "volume",
]
