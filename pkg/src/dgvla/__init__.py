"""Exact computation with dg vertex Lie algebras, their mode Lie algebras and envelopes."""

from .catalog import (
    BilinearForm,
    DgLieData,
    build_affine,
    build_neveu_schwarz,
    build_virasoro,
    casimir_h_dual,
    from_catalog,
    sdim,
    sugawara,
    verify_virasoro_action,
)
from .envelope import (
    EnvelopeContext,
    VVector,
    character,
    cohomology_dims,
    differential_on_V,
    embed_u,
    kappa,
    locality_order,
    mode_apply,
    normal_order,
    skew_symmetry_defect,
    translate,
    vertex_mode,
)
from .graded import binomial, koszul_sign, parse_scalar
from .loop import (
    LElement,
    Mode,
    bracket_of,
    check_dg_lie,
    iota,
    iota_inverse,
    loop_bracket,
    mode_normal_form,
    split_pm,
)
from .vla import (
    UElement,
    VlaPresentation,
    apply_D,
    apply_differential,
    build_vla_from_even_dglie,
    derived_lie_bracket,
    half_skew_defect,
    nth_product,
    validate_presentation,
    zero_mode_bracket,
)

__all__ = [
    "BilinearForm",
    "DgLieData",
    "EnvelopeContext",
    "LElement",
    "Mode",
    "UElement",
    "VVector",
    "VlaPresentation",
    "apply_D",
    "apply_differential",
    "binomial",
    "bracket_of",
    "build_affine",
    "build_neveu_schwarz",
    "build_virasoro",
    "build_vla_from_even_dglie",
    "casimir_h_dual",
    "character",
    "check_dg_lie",
    "cohomology_dims",
    "derived_lie_bracket",
    "differential_on_V",
    "embed_u",
    "from_catalog",
    "half_skew_defect",
    "iota",
    "iota_inverse",
    "kappa",
    "koszul_sign",
    "locality_order",
    "loop_bracket",
    "mode_apply",
    "mode_normal_form",
    "normal_order",
    "nth_product",
    "parse_scalar",
    "sdim",
    "skew_symmetry_defect",
    "split_pm",
    "sugawara",
    "translate",
    "validate_presentation",
    "verify_virasoro_action",
    "vertex_mode",
    "zero_mode_bracket",
]
