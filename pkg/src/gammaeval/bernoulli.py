"""Generalized Bernoulli polynomials B_{n,n}(z, omega_1, ..., omega_n).

B_{n,n} is n! times the constant term of e^(zt) / prod_j (e^(omega_j t) - 1).
Writing 1/(e^(w t) - 1) = (1/(w t)) sum_k B_k (w t)^k / k! turns this into

    B_{n,n}(z, omega) = n! / prod(omega_j) [t^n] e^(zt) prod_j sum_k B_k omega_j^k t^k / k!

with B_1 = -1/2. Rational inputs are handled exactly; anything else runs in
mpmath at working precision.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import mpmath

from src.errors import DimensionMismatch, ZeroOmega
from src.mpnum.bigcomplex import BigComplex, Scalar, guard_bits, to_mpc

logger = logging.getLogger(__name__)

BernoulliValue = Union[Fraction, BigComplex]


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """Bernoulli number B_k with the B_1 = -1/2 convention."""
    if k == 1:
        return Fraction(-1, 2)
    p, q = mpmath.bernfrac(k)
    return Fraction(int(p), int(q))


def _is_exact(value: object) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _series_product(a: list, b: list, order: int, zero) -> list:
    out = [zero] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += ai * b[j]
    return out


def _top_coefficient(z, omegas: Sequence, one, zero, cast):
    """[t^n] of e^(zt) prod_j sum_k B_k omega_j^k t^k / k!, divided by prod omega_j."""
    n = len(omegas)
    series = [one]
    power = one
    for m in range(1, n + 1):
        power = power * z
        series.append(power / math.factorial(m))

    for omega in omegas:
        factor = [one]
        power = one
        for k in range(1, n + 1):
            power = power * omega
            factor.append(power * cast(bernoulli_number(k) / math.factorial(k)))
        series = _series_product(series, factor, n, zero)

    value = series[n]
    for omega in omegas:
        value = value / omega
    return value * math.factorial(n)


def bernoulli_nn(
    n: int,
    z: Scalar,
    omegas: Sequence[Scalar],
    prec: Optional[int] = None
) -> BernoulliValue:
    """Evaluate B_{n,n}(z, omega_1, ..., omega_n).

    Args:
        n: Degree, equal to the number of omegas
        z: Argument; int or Fraction for exact evaluation
        omegas: Nonzero periods; ints or Fractions for exact evaluation
        prec: Precision in bits for the inexact path (default 128)

    Returns:
        Fraction when z and every omega are rational, else BigComplex

    Raises:
        ZeroOmega: If some omega_j is zero
        DimensionMismatch: If len(omegas) != n
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if len(omegas) != n:
        raise DimensionMismatch(f"B_{{{n},{n}}} needs {n} omegas, got {len(omegas)}")

    if _is_exact(z) and all(_is_exact(w) for w in omegas):
        ws = [Fraction(w) for w in omegas]
        if any(w == 0 for w in ws):
            raise ZeroOmega("all omegas must be nonzero")
        return _top_coefficient(Fraction(z), ws, Fraction(1), Fraction(0), Fraction)

    prec = 128 if prec is None else prec
    with mpmath.workprec(prec + guard_bits(prec)):
        ws = [to_mpc(w) for w in omegas]
        if any(w == 0 for w in ws):
            raise ZeroOmega("all omegas must be nonzero")
        value = _top_coefficient(to_mpc(z), ws, mpmath.mpc(1), mpmath.mpc(0), to_mpc)
        return BigComplex.from_mpc(value, prec)


@dataclass(frozen=True)
class BernoulliEval:
    """One evaluation of B_{n,n} with its inputs.

    Example:
        b = BernoulliEval.evaluate(Fraction(1, 3), [Fraction(1), Fraction(2)])
        b.n        # 2
        b.value    # Fraction
    """

    n: int
    z: Scalar
    omegas: Tuple[Scalar, ...]
    value: BernoulliValue

    @classmethod
    def evaluate(
        cls,
        z: Scalar,
        omegas: Sequence[Scalar],
        prec: Optional[int] = None
    ) -> "BernoulliEval":
        n = len(omegas)
        value = bernoulli_nn(n, z, omegas, prec)
        logger.debug(f"B_{n},{n} evaluated ({'exact' if isinstance(value, Fraction) else 'float'})")
        return cls(n, z, tuple(omegas), value)
