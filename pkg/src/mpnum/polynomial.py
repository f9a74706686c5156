"""Integer polynomials (defining polynomials and recognised minimal polynomials)."""

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Tuple

import sympy

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with exact integer coefficients, lowest degree first.

    Trailing zero coefficients are stripped, so the leading coefficient is
    nonzero unless the polynomial is zero (empty coefficient tuple).

    Example:
        p = IntPolynomial.from_list([-2, 5, -1, 1])   # x^3 - x^2 + 5x - 2
        p.degree                                      # 3
        p.evaluate(2)                                 # 12
    """

    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        values = [int(c) for c in self.coeffs]
        for original, value in zip(self.coeffs, values):
            if original != value:
                raise ValueError(f"coefficients must be integers, got {original}")
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_list(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def from_string(cls, text: str) -> "IntPolynomial":
        """Parse an expression in ``x`` such as ``"x^3 - x^2 + 5*x - 2"``.

        Raises:
            ValueError: If the expression is not a polynomial with integer
                coefficients
        """
        try:
            expr = sympy.sympify(text.replace("^", "**"))
            poly = sympy.Poly(expr, _X)
        except (sympy.SympifyError, sympy.PolynomialError, TypeError) as e:
            raise ValueError(f"cannot parse polynomial {text!r}: {e}")
        coeffs = list(reversed(poly.all_coeffs()))
        if not all(c.is_integer for c in coeffs):
            raise ValueError(f"polynomial must have integer coefficients, got {text!r}")
        return cls(tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def norm(self) -> int:
        """Max-norm of the coefficient vector."""
        return max((abs(c) for c in self.coeffs), default=0)

    def evaluate(self, x: Any) -> Any:
        """Horner evaluation; works for ints, Fractions, mpmath and BigComplex."""
        result: Any = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def reversed(self) -> "IntPolynomial":
        """Coefficient list reversed (the reciprocal polynomial x^d P(1/x))."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def to_list(self) -> Sequence[int]:
        return list(self.coeffs)

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], _X)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return str(self.to_sympy().as_expr()).replace("**", "^")
