"""Fractional ideals in HNF and the different ideal of a linear form.

An ideal is stored as (H, d): the Z-module spanned by the columns of H
divided by d, in coordinates relative to the field's integral basis.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from src.errors import DimensionMismatch, SingularForm
from .field import NumberField, NumberFieldElement
from .matrix import (
    IntegerMatrix,
    common_denominator,
    dual_lattice,
    hnf,
    rational_det,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FractionalIdealHNF:
    """Fractional ideal as numerator HNF over a positive denominator.

    The pair is normalized so that the denominator shares no factor with
    every matrix entry at once.

    Example:
        K = NumberField(IntPolynomial.from_list([1, 0, 1]))
        two = FractionalIdealHNF.principal(K, K.element([2]))
        two.norm()                                   # Fraction(4)
    """

    field: NumberField
    numerator_hnf: IntegerMatrix
    denominator: int

    def __post_init__(self) -> None:
        n = self.field.degree
        if self.numerator_hnf.shape != (n, n):
            raise DimensionMismatch(
                f"numerator_hnf must be {n}x{n}, got {self.numerator_hnf.shape}"
            )
        if self.denominator <= 0:
            raise ValueError(f"denominator must be positive, got {self.denominator}")

    @classmethod
    def from_generators(
        cls,
        field: NumberField,
        generators: Sequence[Sequence[Fraction]]
    ) -> "FractionalIdealHNF":
        """Z-module spanned by integral-basis coordinate vectors.

        The caller is responsible for passing a generating set of an
        O_K-module (for example all products of generators with the
        integral basis).
        """
        flat = [Fraction(v) for g in generators for v in g]
        d = common_denominator(flat)
        columns = [[int(Fraction(v) * d) for v in g] for g in generators]
        h = hnf(IntegerMatrix.from_columns(columns))
        g = reduce(math.gcd, h.entries(), d)
        if g > 1:
            h = IntegerMatrix.from_rows([[v // g for v in row] for row in h.rows])
            d //= g
        return cls(field, h, d)

    @classmethod
    def from_elements(
        cls,
        field: NumberField,
        elements: Sequence[NumberFieldElement]
    ) -> "FractionalIdealHNF":
        """Ideal generated by ``elements`` over the ring spanned by the integral basis."""
        generators = [
            field.coordinates(e * w) for e in elements for w in field.integral_basis
        ]
        return cls.from_generators(field, generators)

    @classmethod
    def principal(cls, field: NumberField, element: NumberFieldElement) -> "FractionalIdealHNF":
        return cls.from_elements(field, [element])

    def basis_coordinates(self) -> List[List[Fraction]]:
        """Columns of the HNF divided by the denominator."""
        return [[Fraction(v, self.denominator) for v in col] for col in self.numerator_hnf.columns()]

    def basis_elements(self) -> List[NumberFieldElement]:
        return [self.field.from_basis(c) for c in self.basis_coordinates()]

    def is_integral(self) -> bool:
        return self.denominator == 1

    def norm(self) -> Fraction:
        """Index norm det(H) / d^n relative to the integral basis."""
        return Fraction(self.numerator_hnf.det(), self.denominator ** self.field.degree)

    def contains(self, x: NumberFieldElement) -> bool:
        """Membership test by back substitution in the triangular basis."""
        n = self.field.degree
        target = [c * self.denominator for c in self.field.coordinates(x)]
        h = self.numerator_hnf
        for i in range(n - 1, -1, -1):
            coefficient = target[i] / h[i, i]
            if coefficient.denominator != 1:
                return False
            for k in range(i + 1):
                target[k] -= coefficient * h[k, i]
        return True

    def scale(self, c: Fraction) -> "FractionalIdealHNF":
        """The ideal c * I for a nonzero rational c."""
        c = Fraction(c)
        if c == 0:
            raise ValueError("scale factor must be nonzero")
        return FractionalIdealHNF.from_generators(
            self.field, [[v * c for v in col] for col in self.basis_coordinates()]
        )

    def inverse(self) -> "FractionalIdealHNF":
        """I^{-1} = {x : x * I is contained in the integral basis lattice}."""
        conditions: List[List[Fraction]] = []
        for v in self.basis_elements():
            conditions.extend(self.field.multiplication_matrix(v))
        return FractionalIdealHNF.from_generators(
            self.field, dual_lattice(conditions, self.field.degree)
        )

    def __mul__(self, other: "FractionalIdealHNF") -> "FractionalIdealHNF":
        products = [a * b for a in self.basis_elements() for b in other.basis_elements()]
        return FractionalIdealHNF.from_generators(
            self.field, [self.field.coordinates(p) for p in products]
        )

    def __str__(self) -> str:
        body = str(self.numerator_hnf)
        if self.denominator == 1:
            return body
        return f"(1/{self.denominator}) *\n{body}"


def eta_products(
    units: Sequence[NumberFieldElement],
    permutation: Sequence[int]
) -> List[NumberFieldElement]:
    """Partial products eta_j = eps_{p(1)} * ... * eps_{p(j)} along a permutation.

    ``permutation`` lists 0-based unit indices.
    """
    if sorted(permutation) != list(range(len(units))):
        raise ValueError(f"permutation must reorder 0..{len(units) - 1}, got {list(permutation)}")
    etas = []
    current = units[0].field.one() if units else None
    for index in permutation:
        current = current * units[index]
        etas.append(current)
    return etas


def det_form(
    units: Sequence[NumberFieldElement],
    x: NumberFieldElement,
) -> Fraction:
    """Exact det(1, eta_1, ..., eta_{n-2}, x) in integral-basis coordinates.

    Args:
        units: The n-2 elements eta_1 ... eta_{n-2}
        x: Last column

    Returns:
        Determinant of the n x n coordinate matrix

    Raises:
        DimensionMismatch: If len(units) != n - 2
    """
    field = x.field
    n = field.degree
    if len(units) != n - 2:
        raise DimensionMismatch(f"det_form needs {n - 2} units, got {len(units)}")
    columns = [field.coordinates(field.one())]
    columns.extend(field.coordinates(u) for u in units)
    columns.append(field.coordinates(x))
    rows = [[columns[j][i] for j in range(n)] for i in range(n)]
    return rational_det(rows)


def linear_form_values(
    field: NumberField,
    units: Sequence[NumberFieldElement]
) -> List[Fraction]:
    """Values of x -> det_form(units, x) on the integral basis."""
    return [det_form(units, w) for w in field.integral_basis]


def _apply_form(field: NumberField, ell: Sequence[Fraction], x: NumberFieldElement) -> Fraction:
    return sum((a * b for a, b in zip(ell, field.coordinates(x))), Fraction(0))


def different_of_form(
    field: NumberField,
    ell: Sequence[Fraction]
) -> FractionalIdealHNF:
    """Different ideal of a rational linear form.

    D(ell)^{-1} = {x : ell(x * O_K) in Z}; its Z-basis is read off the
    inverse of the matrix (ell(w_i * w_j)), and D(ell) is its inverse.

    Args:
        field: Number field with its integral basis
        ell: Values of the form on the integral basis

    Returns:
        D(ell) in HNF with denominator

    Raises:
        DimensionMismatch: If ell has the wrong length
        SingularForm: If the value matrix is singular
    """
    n = field.degree
    ell = [Fraction(v) for v in ell]
    if len(ell) != n:
        raise DimensionMismatch(f"linear form needs {n} values, got {len(ell)}")

    basis = field.integral_basis
    values = [[_apply_form(field, ell, wi * wj) for wj in basis] for wi in basis]
    if rational_det(values) == 0:
        raise SingularForm(f"value matrix of the linear form {ell} is singular")

    inverse_ideal = FractionalIdealHNF.from_generators(field, dual_lattice(values, n))
    different = inverse_ideal.inverse()
    logger.debug(f"Different of form {ell}: norm {different.norm()}")
    return different


def lambda_tilde(ideal: FractionalIdealHNF) -> int:
    """Largest integer lambda with D contained in lambda * O_K (gcd of HNF entries)."""
    if not ideal.is_integral():
        raise ValueError(f"ideal must be integral, got denominator {ideal.denominator}")
    return reduce(math.gcd, ideal.numerator_hnf.entries(), 0)


def t_tilde(ideal: FractionalIdealHNF) -> int:
    """Generator of (D cap Z) / lambda_tilde.

    Requires the first integral basis vector to be 1, so that the first HNF
    pivot generates D cap Z.
    """
    if not ideal.is_integral():
        raise ValueError(f"ideal must be integral, got denominator {ideal.denominator}")
    field = ideal.field
    if field.integral_basis[0] != field.one():
        raise ValueError("first integral basis vector must be 1")
    return ideal.numerator_hnf[0, 0] // lambda_tilde(ideal)


def t_min(lam: int, prime_valuations: Sequence[Tuple[int, int]]) -> int:
    """Minimal defect lambda * prod p_j^v_j."""
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    result = lam
    for p, v in prime_valuations:
        if v < 0:
            raise ValueError(f"valuation must be >= 0, got {v} for p={p}")
        result *= p ** v
    return result
