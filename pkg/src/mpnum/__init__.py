"""Arbitrary-precision substrate.

Key components:
- BigComplex: precision-tagged complex value
- e2pi: exp(2 pi i x)
- IntPolynomial: exact integer polynomial
- upper_root: root of a defining polynomial in the upper half-plane
"""

from .bigcomplex import (
    BigComplex,
    MIN_PREC,
    e2pi,
    e2pi_mpc,
    guard_bits,
    digits_to_prec,
    prec_to_digits,
    to_mpc,
)
from .polynomial import IntPolynomial
from .roots import upper_root, aberth_seeds, newton_polish

__all__ = [
    # Values
    'BigComplex',
    'MIN_PREC',
    'e2pi',
    'e2pi_mpc',
    'guard_bits',
    'digits_to_prec',
    'prec_to_digits',
    'to_mpc',

    # Polynomials
    'IntPolynomial',
    'upper_root',
    'aberth_seeds',
    'newton_polish',
]
