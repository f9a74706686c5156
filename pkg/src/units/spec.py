"""Specifications of smoothed products of G_r values.

A term is

    G_r(z, tau / l)^(nu N) / G_r(N z, N tau / l)^nu,   z = k m / q + delta / l

and a unit is a finite product of terms, one class k at a time.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import List, Optional, Tuple

import sympy

from src.errors import DimensionMismatch
from src.nfield.field import NumberField, NumberFieldElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnitTermSpec:
    """One smoothed quotient of G_r values.

    Attributes:
        taus: Parameter numerators tau_0 ... tau_r in K
        level: Common positive denominator l of the parameters
        arg_rational: Rational part k m / q of the first argument
        arg_delta: Numerator of the non-rational part of the first argument
        nu: Exponent sign, +1 or -1
        smoothing_n: Prime smoothing index N, coprime to q
        real_variant: Evaluate G_2 by the trigonometric series (one real tau)
    """

    taus: Tuple[NumberFieldElement, ...]
    level: int
    arg_rational: Fraction
    arg_delta: Optional[NumberFieldElement] = None
    nu: int = 1
    smoothing_n: int = 2
    real_variant: bool = False

    def __post_init__(self) -> None:
        if not self.taus:
            raise ValueError("taus must be non-empty")
        object.__setattr__(self, "taus", tuple(self.taus))
        object.__setattr__(self, "arg_rational", Fraction(self.arg_rational))

        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")
        if self.nu not in (1, -1):
            raise ValueError(f"nu must be +1 or -1, got {self.nu}")
        if not sympy.isprime(self.smoothing_n):
            raise ValueError(f"smoothing_n must be prime, got {self.smoothing_n}")
        q = self.arg_rational.denominator
        if math.gcd(self.smoothing_n, q) != 1:
            raise ValueError(
                f"smoothing_n must be coprime to q = {q}, got {self.smoothing_n}"
            )
        if self.real_variant and len(self.taus) != 3:
            raise ValueError(f"real_variant needs exactly 3 parameters, got {len(self.taus)}")

        poly = self.taus[0].field.defining_poly
        others = list(self.taus[1:]) + ([self.arg_delta] if self.arg_delta is not None else [])
        for x in others:
            if x.field.defining_poly != poly:
                raise DimensionMismatch("all term data must lie in the same number field")

    @property
    def r(self) -> int:
        return len(self.taus) - 1

    @property
    def field(self) -> NumberField:
        return self.taus[0].field

    def with_sign(self, nu: int) -> "UnitTermSpec":
        """Same term with exponent sign ``nu``."""
        return UnitTermSpec(
            self.taus, self.level, self.arg_rational, self.arg_delta,
            nu, self.smoothing_n, self.real_variant,
        )


@dataclass(frozen=True)
class UnitReference:
    """Printed data a computed unit is compared with.

    Attributes:
        value: Printed decimal approximation, e.g. "-27.5333588 - 32.7146180i"
        polynomial: Coefficients (lowest degree first) of a polynomial over K
            with the unit as a root; absolute polynomials have rational entries
        klf_value: Printed decimal value of log|u|^2
    """

    value: Optional[str] = None
    polynomial: Optional[Tuple[NumberFieldElement, ...]] = None
    klf_value: Optional[str] = None

    @property
    def is_palindromic(self) -> bool:
        if self.polynomial is None:
            return False
        return list(self.polynomial) == list(reversed(self.polynomial))


@dataclass(frozen=True)
class UnitSpec:
    """Smoothed product for one class k and one ideal class label.

    Example:
        spec = UnitSpec(field, (term,), k=1, label="(1)")
        eval_unit(spec, prec=200)
    """

    field: NumberField
    terms: Tuple[UnitTermSpec, ...]
    k: int = 1
    label: str = "(1)"
    reference: UnitReference = dataclass_field(default_factory=UnitReference)

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a unit needs at least one term")
        object.__setattr__(self, "terms", tuple(self.terms))
        for term in self.terms:
            if term.field.defining_poly != self.field.defining_poly:
                raise DimensionMismatch("unit terms must lie in the unit's field")

        n = self.field.degree
        optimal = math.factorial(max(n - 2, 0))
        if len(self.terms) < optimal:
            logger.warning(
                f"unit {self.label} k={self.k} has {len(self.terms)} terms, "
                f"fewer than the optimal count {optimal}"
            )

    @property
    def signs(self) -> List[int]:
        return [t.nu for t in self.terms]

    def with_signs(self, signs: List[int]) -> "UnitSpec":
        """Same unit with term signs replaced."""
        if len(signs) != len(self.terms):
            raise DimensionMismatch(f"expected {len(self.terms)} signs, got {len(signs)}")
        terms = tuple(t.with_sign(s) for t, s in zip(self.terms, signs))
        return UnitSpec(self.field, terms, self.k, self.label, self.reference)
