"""Silting-discreteness of graded path algebras: decisions, reductions and witnesses."""
from .classify import ClassificationVerdict, check_condition_two, classify
from .quiver import (
    Arrow,
    GradedQuiver,
    QuiverError,
    QuiverParseError,
    apply_potential,
    cycle_degree_totals,
    graph_type,
    normalize,
    opposite,
    parse_quiver,
    serialize_quiver,
)
from .reduce import CoreShape, ReductionTrace, match_core_shape, reduce_to_core, replay

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Arrow",
    "GradedQuiver",
    "QuiverError",
    "QuiverParseError",
    "apply_potential",
    "cycle_degree_totals",
    "graph_type",
    "normalize",
    "opposite",
    "parse_quiver",
    "serialize_quiver",
    "ClassificationVerdict",
    "check_condition_two",
    "classify",
    "CoreShape",
    "ReductionTrace",
    "match_core_shape",
    "reduce_to_core",
    "replay",
]
