"""Extended tropicalization of toric varieties and its description as a quotient by the affinoid torus."""

from .corpus import corpus, corpus_fan
from .errors import ChartError, FanError, ParseError, RankError, TropError, UnsupportedConeError
from .extended import INF, ExtendedTropPoint, closure_order, evaluate, make_point
from .polyhedra import (
    AffineSemigroup, Cone, Fan, cone, dual_cone, faces, hilbert_basis, semigroup, validate_fan, zero_cone,
)
from .quotient import QuotientReport, verify_quotient
from .tropicalize import SkeletonGraph, orbit_cone_of, retract, retraction_value, section, skeleton_graph, trop
from .valued import (
    KPoint, MonomialPoint, SemigroupPolynomial, TensorPoint, TensorPolynomial, act, eval_seminorm,
    eval_tensor, is_affinoid_unit, k_point, k_point_from_chart, monomial_coordinate, parse_scalar, scalar,
    torus_point, torus_pullbacks, val,
)

__version__ = "0.1.0"

__all__ = [
    "corpus",
    "corpus_fan",
    "AffineSemigroup",
    "ChartError",
    "Cone",
    "ExtendedTropPoint",
    "Fan",
    "FanError",
    "INF",
    "KPoint",
    "MonomialPoint",
    "ParseError",
    "QuotientReport",
    "RankError",
    "SemigroupPolynomial",
    "SkeletonGraph",
    "TensorPoint",
    "TensorPolynomial",
    "TropError",
    "UnsupportedConeError",
    "act",
    "closure_order",
    "cone",
    "dual_cone",
    "eval_seminorm",
    "eval_tensor",
    "evaluate",
    "faces",
    "hilbert_basis",
    "is_affinoid_unit",
    "k_point",
    "k_point_from_chart",
    "make_point",
    "monomial_coordinate",
    "orbit_cone_of",
    "parse_scalar",
    "retract",
    "retraction_value",
    "scalar",
    "section",
    "semigroup",
    "skeleton_graph",
    "torus_point",
    "torus_pullbacks",
    "trop",
    "val",
    "validate_fan",
    "verify_quotient",
    "zero_cone",
]
