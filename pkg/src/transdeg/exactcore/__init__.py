"""Exact arithmetic substrate: big-integer matrices, dense integer
polynomials, mod-p structure, certified complex enclosures, and rational
reconstruction.  Everything downstream builds on this.
"""

from .matrices import (
    IntegerMatrix,
    identity,
    mat_mul,
    mat_vec,
    mat_pow,
    mat_add,
    mat_scale,
    transpose,
    det,
    inverse_unimodular,
    char_poly,
    is_sl,
)
from .polynomials import (
    IntPolynomial,
    poly_add,
    poly_sub,
    poly_mul,
    poly_divmod_exact,
    poly_divmod_q,
    poly_gcd_q,
    poly_eval,
    poly_eval_fraction,
    poly_derivative,
    poly_content,
    poly_is_squarefree_q,
    resultant,
    resultant_bivariate,
    cyclotomic,
    sturm_real_root_count,
    sturm_chain,
)
from .modp import (
    poly_mod,
    factor_pattern_mod_p,
    matrix_period_mod_p,
    matrix_order_divides,
    roots_mod_p,
    element_order,
)
from .reconstruct import rational_reconstruct, reconstruct_in_lattice
from .enclosures import (
    RealEnclosure,
    ComplexEnclosure,
    enclosure_context,
    DEFAULT_PRECISION_CEILING,
    precision_ceiling,
)

__all__ = [
    "IntegerMatrix", "identity", "mat_mul", "mat_vec", "mat_pow", "mat_add",
    "mat_scale", "transpose", "det", "inverse_unimodular", "char_poly", "is_sl",
    "IntPolynomial", "poly_add", "poly_sub", "poly_mul", "poly_divmod_exact",
    "poly_divmod_q", "poly_gcd_q", "poly_eval", "poly_eval_fraction",
    "poly_derivative", "poly_content", "poly_is_squarefree_q", "resultant",
    "resultant_bivariate", "cyclotomic", "sturm_real_root_count", "sturm_chain",
    "poly_mod", "factor_pattern_mod_p", "matrix_period_mod_p",
    "matrix_order_divides", "roots_mod_p", "element_order",
    "rational_reconstruct", "reconstruct_in_lattice",
    "RealEnclosure", "ComplexEnclosure", "enclosure_context",
    "DEFAULT_PRECISION_CEILING", "precision_ceiling",
]
