"""Smoothed products of G_r values and their sign search.

Key components:
- UnitTermSpec / UnitSpec: parameters of one unit, exact over K
- eval_term / eval_unit: numerical values of terms and products
- log_abs_sq / polynomial_residual: comparisons with printed references
- oracle_check_term: cross-check of a term against truncated products
- sign_search: exponent signs from a reference log|u|^2
"""

from .spec import UnitTermSpec, UnitSpec, UnitReference
from .evaluator import (
    UnitValue,
    eval_term,
    eval_unit,
    log_abs_sq,
    polynomial_residual,
    term_point,
    check_center_strip,
    oracle_check_term,
)
from .signs import sign_search, printed_tolerance, all_sign_vectors

__all__ = [
    # Specifications
    'UnitTermSpec',
    'UnitSpec',
    'UnitReference',

    # Evaluation
    'UnitValue',
    'eval_term',
    'eval_unit',
    'log_abs_sq',
    'polynomial_residual',
    'term_point',
    'check_center_strip',
    'oracle_check_term',

    # Signs
    'sign_search',
    'printed_tolerance',
    'all_sign_vectors',
]
