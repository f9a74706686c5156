"""Number fields Q[x]/(P) with exact rational element arithmetic."""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
import sympy

from src.errors import DimensionMismatch, DivisionByZero
from src.mpnum.bigcomplex import BigComplex, guard_bits
from src.mpnum.polynomial import IntPolynomial
from src.mpnum.roots import upper_root

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

_Z = sympy.Symbol("z")


def _to_fraction(value: Union[Rational, str, sympy.Rational]) -> Fraction:
    if isinstance(value, (sympy.Rational, sympy.Integer)):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _reduce(coeffs: Sequence[Fraction], poly: IntPolynomial) -> Tuple[Fraction, ...]:
    """Remainder of a rational coefficient vector modulo ``poly``."""
    n = poly.degree
    c = list(coeffs)
    lead = poly.leading
    for k in range(len(c) - 1, n - 1, -1):
        factor = c[k] / lead
        if factor:
            for i, pc in enumerate(poly.coeffs):
                c[k - n + i] -= factor * pc
    c = c[:n]
    c.extend([Fraction(0)] * (n - len(c)))
    return tuple(c)


@dataclass(frozen=True)
class NumberField:
    """Field K = Q[x]/(P) with a chosen Z-basis of its ring of integers.

    The integral basis is stored as power-basis coordinate vectors and
    defaults to 1, z, ..., z^(n-1). Fields whose power basis is not maximal
    supply their basis explicitly.

    Example:
        K = NumberField(IntPolynomial.from_list([-2, 5, -1, 1]))
        z = K.generator()
        eps = z * z + 2 * z - 1
        K.embed(eps, prec=200)
    """

    defining_poly: IntPolynomial
    basis_coords: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    _basis_inverse: Tuple[Tuple[Fraction, ...], ...] = dataclass_field(
        default=(), init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        n = self.defining_poly.degree
        if n < 1:
            raise ValueError(f"defining polynomial degree must be >= 1, got {n}")

        if self.basis_coords is None:
            basis = tuple(
                tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
            )
        else:
            basis = tuple(tuple(_to_fraction(c) for c in b) for b in self.basis_coords)
            if len(basis) != n or any(len(b) != n for b in basis):
                raise DimensionMismatch(
                    f"integral basis must have {n} vectors of length {n}"
                )
        object.__setattr__(self, "basis_coords", basis)

        # columns of the change-of-basis matrix are the basis vectors
        change = sympy.Matrix(n, n, lambda i, j: sympy.Rational(
            basis[j][i].numerator, basis[j][i].denominator))
        if change.det() == 0:
            raise ValueError("integral basis must be linearly independent")
        inverse = change.inv()
        object.__setattr__(self, "_basis_inverse", tuple(
            tuple(_to_fraction(inverse[i, j]) for j in range(n)) for i in range(n)
        ))

        logger.debug(f"Initialized NumberField for {self.defining_poly} (degree {n})")

    @classmethod
    def from_basis_strings(
        cls,
        poly: IntPolynomial,
        basis: Sequence[Sequence[Union[int, str]]]
    ) -> "NumberField":
        """Build a field from basis coordinates written as ``"a/b"`` strings."""
        return cls(poly, tuple(tuple(Fraction(c) for c in b) for b in basis))

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    def element(self, coeffs: Sequence[Union[Rational, str]]) -> "NumberFieldElement":
        """Element from power-basis coefficients (lowest degree first)."""
        return NumberFieldElement(self, tuple(Fraction(c) for c in coeffs))

    def zero(self) -> "NumberFieldElement":
        return self.element([0])

    def one(self) -> "NumberFieldElement":
        return self.element([1])

    def generator(self) -> "NumberFieldElement":
        """The class z of x modulo the defining polynomial."""
        if self.degree == 1:
            return self.element([Fraction(-self.defining_poly.coeffs[0], self.defining_poly.leading)])
        return self.element([0, 1])

    @property
    def integral_basis(self) -> List["NumberFieldElement"]:
        assert self.basis_coords is not None
        return [NumberFieldElement(self, b) for b in self.basis_coords]

    def coordinates(self, x: "NumberFieldElement") -> Tuple[Fraction, ...]:
        """Coordinates of ``x`` with respect to the integral basis."""
        self._check_member(x)
        return tuple(
            sum((row[j] * x.coeffs[j] for j in range(self.degree)), Fraction(0))
            for row in self._basis_inverse
        )

    def from_basis(self, coords: Sequence[Rational]) -> "NumberFieldElement":
        """Element with the given integral-basis coordinates."""
        if len(coords) != self.degree:
            raise DimensionMismatch(
                f"expected {self.degree} coordinates, got {len(coords)}"
            )
        assert self.basis_coords is not None
        power = [Fraction(0)] * self.degree
        for c, b in zip(coords, self.basis_coords):
            for i in range(self.degree):
                power[i] += Fraction(c) * b[i]
        return NumberFieldElement(self, tuple(power))

    def multiplication_matrix(self, x: "NumberFieldElement") -> List[List[Fraction]]:
        """Matrix of y -> x*y in integral-basis coordinates (row-major)."""
        columns = [self.coordinates(x * w) for w in self.integral_basis]
        n = self.degree
        return [[columns[j][i] for j in range(n)] for i in range(n)]

    def embed(self, x: "NumberFieldElement", prec: int) -> BigComplex:
        """Image of ``x`` under the embedding sending z to the upper root of P."""
        self._check_member(x)
        wp = prec + guard_bits(prec)
        z = upper_root(self.defining_poly, wp)
        with mpmath.workprec(wp):
            zv = z.value
            total = mpmath.mpc(0)
            for c in reversed(x.coeffs):
                total = total * zv + mpmath.mpf(c.numerator) / c.denominator
            return BigComplex.from_mpc(total, prec)

    def embed_generator_powers(self, prec: int) -> List[BigComplex]:
        """Embedded integral basis, the reference vector for relative recognition."""
        return [self.embed(w, prec) for w in self.integral_basis]

    def _check_member(self, x: "NumberFieldElement") -> None:
        if x.field.defining_poly != self.defining_poly:
            raise DimensionMismatch(
                f"element of Q[x]/({x.field.defining_poly}) used in Q[x]/({self.defining_poly})"
            )


@dataclass(frozen=True)
class NumberFieldElement:
    """Exact element of a number field as power-basis coefficients.

    Coefficient vectors of any length are reduced modulo the defining
    polynomial on construction.
    """

    field: NumberField
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = [Fraction(c) for c in self.coeffs]
        object.__setattr__(self, "coeffs", _reduce(values, self.field.defining_poly))

    def _coerce(self, other: object) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            self.field._check_member(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        raise TypeError(f"cannot combine NumberFieldElement with {type(other).__name__}")

    def __add__(self, other: object) -> "NumberFieldElement":
        o = self._coerce(other)
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "NumberFieldElement":
        return NumberFieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other: object) -> "NumberFieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "NumberFieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "NumberFieldElement":
        o = self._coerce(other)
        n = len(self.coeffs)
        product = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    product[i + j] += a * b
        return NumberFieldElement(self.field, tuple(product))

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        """Multiplicative inverse via polynomial extended gcd over QQ.

        Raises:
            DivisionByZero: If the element is zero (or shares a factor with
                a reducible defining polynomial)
        """
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a number field")
        a = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            _Z, domain="QQ")
        p = sympy.Poly(list(reversed(self.field.defining_poly.coeffs)), _Z, domain="QQ")
        try:
            inv = a.invert(p)
        except sympy.polys.polyerrors.NotInvertible:
            raise DivisionByZero(f"{self} is not invertible modulo {self.field.defining_poly}")
        coeffs = [_to_fraction(c) for c in reversed(inv.all_coeffs())]
        return NumberFieldElement(self.field, tuple(coeffs))

    def __truediv__(self, other: object) -> "NumberFieldElement":
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent: int) -> "NumberFieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def trace(self) -> Fraction:
        """Trace over Q (sum of the diagonal of the power-basis multiplication matrix)."""
        n = len(self.coeffs)
        total = Fraction(0)
        for i in range(n):
            power = [Fraction(0)] * n
            power[i] = Fraction(1)
            total += (self * NumberFieldElement(self.field, tuple(power))).coeffs[i]
        return total

    def to_list(self) -> List[str]:
        """Coefficients as strings, the form used in JSON documents."""
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        expr = sum(
            (sympy.Rational(c.numerator, c.denominator) * _Z ** i for i, c in enumerate(self.coeffs)),
            sympy.Integer(0),
        )
        return str(expr).replace("**", "^")


def nf_arith(
    a: NumberFieldElement,
    b: Optional[NumberFieldElement],
    op: str
) -> NumberFieldElement:
    """Exact field operation: ``add``, ``mul`` or ``inv`` (b ignored for inv).

    Raises:
        DivisionByZero: On inv(0)
        ValueError: If op is unknown
    """
    if op == "add":
        assert b is not None
        return a + b
    if op == "mul":
        assert b is not None
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"op must be one of add, mul, inv, got {op!r}")
