"""Exact graded representation theory: Hom, Ext^1, resolutions and brick families."""
from .field import RATIONALS, ExactField, prime_field
from .rep import (
    GradedRep,
    RepError,
    direct_sum,
    dual,
    load_rep,
    projective,
    rep_from_json,
    rep_to_json,
    simple,
    transport,
    zero_rep,
)
from .homological import (
    HomSpace,
    PsmcReport,
    Resolution,
    check_pre_smc,
    endomorphisms_local,
    ext1_graded,
    ext_vanishing_shortcut,
    hom_ext_dims,
    hom_graded,
    is_morphism,
    minimal_resolution,
    minimal_resolution_shape,
    resolution_is_exact,
    standard_resolution,
)
from .families import (
    UnsupportedParameters,
    build_L_case_a,
    build_L_case_b,
    build_L_case_c,
    build_L_kron_deg0,
    build_L_special,
)

__all__ = [
    "GradedRep",
    "RepError",
    "direct_sum",
    "dual",
    "load_rep",
    "projective",
    "rep_from_json",
    "rep_to_json",
    "simple",
    "transport",
    "zero_rep",
    "HomSpace",
    "PsmcReport",
    "Resolution",
    "check_pre_smc",
    "endomorphisms_local",
    "ext1_graded",
    "ext_vanishing_shortcut",
    "hom_ext_dims",
    "hom_graded",
    "is_morphism",
    "minimal_resolution",
    "minimal_resolution_shape",
    "resolution_is_exact",
    "standard_resolution",
    "UnsupportedParameters",
    "build_L_case_a",
    "build_L_case_b",
    "build_L_case_c",
    "build_L_kron_deg0",
    "build_L_special",
    "RATIONALS",
    "ExactField",
    "prime_field",
]
