"""Integer relation detection and algebraic recognition.

Key components:
- LatticeBasis / lll: exact LLL reduction
- lindep / algdep: integer relations and minimal polynomials
- relative_lindep / relative_polynomial: recognition over a number field
- palindrome_check: shape test for recognised polynomials
"""

from .lattice import LatticeBasis, lll, gram_schmidt, is_lll_reduced, DEFAULT_DELTA
from .relations import (
    RecognitionResult,
    LINEAR_RELATION,
    MIN_POLYNOMIAL,
    lindep,
    algdep,
    relative_lindep,
    recognize_element,
    relative_polynomial,
    elementary_symmetric,
    integer_polynomial_residual,
    certification_threshold,
    palindrome_check,
)

__all__ = [
    # Lattices
    'LatticeBasis',
    'lll',
    'gram_schmidt',
    'is_lll_reduced',
    'DEFAULT_DELTA',

    # Relations
    'RecognitionResult',
    'LINEAR_RELATION',
    'MIN_POLYNOMIAL',
    'lindep',
    'algdep',
    'relative_lindep',
    'recognize_element',
    'relative_polynomial',
    'elementary_symmetric',
    'integer_polynomial_residual',
    'certification_threshold',
    'palindrome_check',
]
