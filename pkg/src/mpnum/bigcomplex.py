"""Precision-tagged complex numbers on top of mpmath.

Every numeric value that leaves this package is a BigComplex: an immutable
pair of mpmath reals plus the number of bits it is meant to be accurate to.
Internal loops elsewhere work on raw ``mpmath.mpc`` values inside a
``mpmath.workprec`` block and wrap the result at the end.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from src.errors import PrecisionOverflow

logger = logging.getLogger(__name__)

MIN_PREC = 64

# exp(2 pi i x) with 2 pi |Im x| beyond this is refused
MAX_EXPONENT = 2.0 ** 40

LOG2_10 = math.log2(10)

Scalar = Union[int, Fraction, float, complex, str, mpmath.mpf, mpmath.mpc]


def guard_bits(prec: int) -> int:
    """Extra bits carried internally on top of a requested precision."""
    return max(32, prec // 10)


def digits_to_prec(digits: int) -> int:
    """Convert decimal digits to bits, never below MIN_PREC."""
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    return max(MIN_PREC, int(math.ceil(digits * LOG2_10)) + 4)


def prec_to_digits(prec: int) -> int:
    """Number of decimal digits represented by ``prec`` bits."""
    return max(1, int(prec / LOG2_10))


def to_mpc(value: Scalar) -> mpmath.mpc:
    """Convert a scalar to ``mpmath.mpc`` at the current working precision.

    Fractions are divided at working precision, strings go through mpmath's
    parser and BigComplex values are unwrapped.
    """
    if isinstance(value, BigComplex):
        return value.value
    if isinstance(value, Fraction):
        return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
    if isinstance(value, str):
        text = value.strip().replace("i", "j")
        return mpmath.mpmathify(text) + mpmath.mpc(0)
    return mpmath.mpc(value)


@dataclass(frozen=True)
class BigComplex:
    """Arbitrary-precision complex value tagged with its precision.

    Arithmetic between two BigComplex values runs at the smaller of the two
    precisions; plain Python numbers adopt the precision of the BigComplex
    operand.

    Example:
        z = BigComplex.from_value(Fraction(1, 4), prec=128)
        w = e2pi(z)          # i to 128 bits
        w * w                # -1
    """

    re: mpmath.mpf
    im: mpmath.mpf
    prec: int

    def __post_init__(self) -> None:
        if self.prec < MIN_PREC:
            raise ValueError(f"prec must be >= {MIN_PREC}, got {self.prec}")

    @classmethod
    def from_value(cls, value: Scalar, prec: int) -> "BigComplex":
        """Build a BigComplex by rounding ``value`` to ``prec`` bits."""
        if isinstance(value, BigComplex):
            prec = min(prec, value.prec)
        with mpmath.workprec(prec):
            v = to_mpc(value)
            return cls(+v.real, +v.imag, prec)

    @classmethod
    def from_mpc(cls, value: mpmath.mpc, prec: int) -> "BigComplex":
        """Wrap a raw mpmath value computed at (at least) ``prec`` bits."""
        with mpmath.workprec(prec):
            v = mpmath.mpc(value)
            return cls(+v.real, +v.imag, prec)

    @property
    def value(self) -> mpmath.mpc:
        """The raw mpmath value, built without rounding to the ambient precision."""
        with mpmath.workprec(self.prec):
            return mpmath.mpc(self.re, self.im)

    @property
    def digits(self) -> int:
        return prec_to_digits(self.prec)

    def _binary(self, other: object, op) -> "BigComplex":
        if isinstance(other, BigComplex):
            prec = min(self.prec, other.prec)
        else:
            prec = self.prec
        with mpmath.workprec(prec + guard_bits(prec)):
            rhs = to_mpc(other)  # type: ignore[arg-type]
            return BigComplex.from_mpc(op(self.value, rhs), prec)

    def __add__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: b * a)

    def __truediv__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other: object) -> "BigComplex":
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self) -> "BigComplex":
        with mpmath.workprec(self.prec):
            return BigComplex(-self.re, -self.im, self.prec)

    def __pow__(self, exponent: int) -> "BigComplex":
        if not isinstance(exponent, int):
            raise TypeError(f"exponent must be int, got {type(exponent).__name__}")
        with mpmath.workprec(self.prec + guard_bits(self.prec)):
            return BigComplex.from_mpc(self.value ** exponent, self.prec)

    def __abs__(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec):
            return abs(self.value)

    def conjugate(self) -> "BigComplex":
        with mpmath.workprec(self.prec):
            return BigComplex(self.re, -self.im, self.prec)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def with_prec(self, prec: int) -> "BigComplex":
        """Same value re-tagged (and rounded if lower) to ``prec`` bits."""
        with mpmath.workprec(prec):
            return BigComplex(+self.re, +self.im, prec)

    def to_string(self, digits: int) -> str:
        """Decimal rendering ``re + im*i`` with ``digits`` significant digits."""
        with mpmath.workprec(max(self.prec, int(digits * LOG2_10) + 8)):
            re = mpmath.nstr(self.re, digits)
            im = mpmath.nstr(abs(self.im), digits)
        sign = "-" if self.im < 0 else "+"
        return f"{re} {sign} {im}i"

    def __str__(self) -> str:
        return self.to_string(min(self.digits, 20))


def e2pi_mpc(x: mpmath.mpc) -> mpmath.mpc:
    """exp(2 pi i x) on a raw value at the current working precision.

    Raises:
        PrecisionOverflow: If 2 pi |Im x| exceeds MAX_EXPONENT
    """
    if abs(float(mpmath.im(x))) * 2 * math.pi > MAX_EXPONENT:
        raise PrecisionOverflow(
            f"exponent 2*pi*Im(x) out of range for Im(x) = {mpmath.nstr(mpmath.im(x), 8)}"
        )
    return mpmath.expjpi(2 * x)


def e2pi(x: BigComplex) -> BigComplex:
    """Return exp(2 pi i x) to the precision of ``x``.

    Args:
        x: Finite argument

    Returns:
        exp(2 pi i x) with relative error below 2^(-prec+8)

    Raises:
        PrecisionOverflow: If 2 pi |Im x| exceeds the supported exponent range
    """
    prec = x.prec
    with mpmath.workprec(prec + guard_bits(prec)):
        return BigComplex.from_mpc(e2pi_mpc(x.value), prec)
