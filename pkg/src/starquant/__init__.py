"""Exact star products over finite-dimensional Lie algebras.

Gutt and standard ordered star products with coefficients in Q(i)[hbar],
plus numeric tools for Lie-Taylor series, majorants and Cauchy estimates
on matrix groups.
"""
from .algebra import LieAlgebraSpec, bracket, catalog, validate_algebra
from .group_functions import (GroupElementExpr, Jet, MatrixElementFunction, MatrixRep, catalog_rep, cauchy_check,
                              coeff_eval, complex_extension_eval, entire_seminorm, lie_derive_word, lie_taylor_eval,
                              majorant_coeffs, to_jet)
from .gutt import classical_limit, eval_on_dual, gutt_star, hbar_coefficient, poisson_bracket
from .parse import parse_tensor
from .pbw import PBWElement, normal_order, pbw_desymmetrize, pbw_multiply, pbw_symmetrize
from .scalars import GaussianRational, HbarScalar, hbar_eval
from .std_star import (AbelianPhasePoly, PhaseSpacePoly, operator_consistency_check, rho_std_apply,
                       semiclassical_std, std_star, std_star_abelian)
from .sym_tensor import SymTensor, l1_proj_norm, polarize, seminorm_Rc, sym_product, symmetrize

__all__ = [
    "AbelianPhasePoly",
    "GaussianRational",
    "GroupElementExpr",
    "HbarScalar",
    "Jet",
    "LieAlgebraSpec",
    "MatrixElementFunction",
    "MatrixRep",
    "PBWElement",
    "PhaseSpacePoly",
    "SymTensor",
    "bracket",
    "catalog",
    "catalog_rep",
    "cauchy_check",
    "classical_limit",
    "coeff_eval",
    "complex_extension_eval",
    "entire_seminorm",
    "eval_on_dual",
    "gutt_star",
    "hbar_coefficient",
    "hbar_eval",
    "l1_proj_norm",
    "lie_derive_word",
    "lie_taylor_eval",
    "majorant_coeffs",
    "normal_order",
    "operator_consistency_check",
    "parse_tensor",
    "pbw_desymmetrize",
    "pbw_multiply",
    "pbw_symmetrize",
    "poisson_bracket",
    "polarize",
    "rho_std_apply",
    "semiclassical_std",
    "seminorm_Rc",
    "std_star",
    "std_star_abelian",
    "sym_product",
    "symmetrize",
    "to_jet",
    "validate_algebra",
]

__version__ = "0.1.0"
