"""Exact toolkit for adjoint curves of polycons, symmetric determinantal
representations of their cubic adjoints, and adjoint-preserving deformations."""

from .plane import (
    AlgebraicBlock,
    Curve,
    ProjPoint,
    ResidualScheme,
    classify_conic,
    intersect_conics,
    intersection_multiplicity,
    parametrize_conic,
)
from .poly import AFF, PROJ, Poly, divexact, gcd_poly, parse_poly, proportional, resultant
from .polycon import (
    Polycon,
    check_regularity,
    reduce_component,
    residual_arrangement,
    select_sides,
    validate,
)
from .adjoint import (
    AdjointCurve,
    compute_adjoint,
    contact_check,
    common_residual,
    triangulation_identity,
    verify_off_boundary,
    wachspress_witness,
)
from .detrep import (
    AdjugateMatrix,
    BasisChange,
    LDRPair,
    SymLDR,
    check_res_preservation,
    deform,
    dixon,
    ldr_from_polycon,
    polycon_from_ldr,
    scaling_rigidity,
)
from .linalg import Matrix, nullspace
from .numberfield import ExtElem, NumberField, ext_reduce

__version__ = "0.1.0"

__all__ = [
    "AFF",
    "PROJ",
    "AdjointCurve",
    "AdjugateMatrix",
    "AlgebraicBlock",
    "BasisChange",
    "Curve",
    "ExtElem",
    "LDRPair",
    "Matrix",
    "NumberField",
    "Poly",
    "Polycon",
    "ProjPoint",
    "ResidualScheme",
    "SymLDR",
    "check_regularity",
    "check_res_preservation",
    "classify_conic",
    "common_residual",
    "compute_adjoint",
    "contact_check",
    "deform",
    "divexact",
    "dixon",
    "ext_reduce",
    "gcd_poly",
    "intersect_conics",
    "intersection_multiplicity",
    "ldr_from_polycon",
    "nullspace",
    "parametrize_conic",
    "parse_poly",
    "polycon_from_ldr",
    "proportional",
    "reduce_component",
    "residual_arrangement",
    "resultant",
    "scaling_rigidity",
    "select_sides",
    "triangulation_identity",
    "validate",
    "verify_off_boundary",
    "wachspress_witness",
]
