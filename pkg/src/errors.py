"""Error types shared by every package.

All errors derive from EllipticGammaError, itself a ValueError, so callers
that only care about bad input can keep catching ValueError. The CLI prints
the class name, so each failure mode gets its own subclass.
"""

from typing import List, Sequence


class EllipticGammaError(ValueError):
    """Base class for all domain errors."""


# mpnum
class NoUpperRoot(EllipticGammaError):
    """No root with positive imaginary part at the working precision."""


class PrecisionOverflow(EllipticGammaError):
    """An exponent left the representable range."""


# nfield
class DivisionByZero(EllipticGammaError):
    """Inverse of zero requested in a number field."""


class DimensionMismatch(EllipticGammaError):
    """Sizes of vectors, bases or matrices do not agree."""


class SingularForm(EllipticGammaError):
    """Linear form whose value matrix is singular."""


class RankDeficient(EllipticGammaError):
    """Matrix or lattice basis is not of full rank."""


class DegenerateCone(EllipticGammaError):
    """Cone generators are linearly dependent."""


# gammaeval
class ConvergenceTooSlow(EllipticGammaError):
    """Series decay rate is below the configured floor."""


class OutsideCenterStrip(EllipticGammaError):
    """Argument is not inside the center strip of its parameters."""


class DepthExceeded(EllipticGammaError):
    """Translation budget exhausted while reducing an argument."""


class SmallDenominator(EllipticGammaError):
    """A sine denominator is too small for the working precision."""


class ZeroOmega(EllipticGammaError):
    """A period is zero."""


class RealRatio(EllipticGammaError):
    """Two periods have a real ratio."""


class RealParameter(EllipticGammaError):
    """A parameter is real where a non-real one is required."""


# units
class CenterStripViolation(EllipticGammaError):
    """A unit term does not satisfy the center strip guarantee."""


class ZeroValue(EllipticGammaError):
    """Logarithm of zero requested."""


class NoMatch(EllipticGammaError):
    """No sign vector reproduces the reference value."""


class Ambiguous(EllipticGammaError):
    """Several sign vectors reproduce the reference value."""

    def __init__(self, message: str, matches: Sequence[Sequence[int]]):
        super().__init__(message)
        self.matches: List[List[int]] = [list(m) for m in matches]


# recognize
class NoRelation(EllipticGammaError):
    """No integer relation certified under the height bound."""


# cli
class ConfigError(EllipticGammaError):
    """Configuration document is malformed."""
