"""Integer relations, minimal polynomials and relative recognition.

Relations are found by reducing the lattice spanned by the rows

    (e_i, round(S Re v_i), round(S Im v_i)),   S = 10^(digits - 10)

and reading candidate coefficient vectors from the identity block of the
reduced basis. Every candidate is scored by its residual at full
precision; the best one is certified when its residual is below
10^(-digits/2).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

import mpmath

from src.errors import DimensionMismatch, NoRelation
from src.mpnum.bigcomplex import BigComplex, prec_to_digits, to_mpc
from src.mpnum.polynomial import IntPolynomial
from src.nfield.field import NumberField, NumberFieldElement
from .lattice import DEFAULT_DELTA, LatticeBasis, lll

logger = logging.getLogger(__name__)

GUARD_DIGITS = 10

LINEAR_RELATION = "linear_relation"
MIN_POLYNOMIAL = "min_polynomial"

Value = Union[BigComplex, mpmath.mpf, mpmath.mpc, int, float, str]


@dataclass(frozen=True)
class RecognitionResult:
    """Integer relation or minimal polynomial found by lattice reduction.

    Attributes:
        kind: LINEAR_RELATION or MIN_POLYNOMIAL
        coefficients: Integer coefficients; lowest degree first for polynomials
        residual: Relative residual of the relation at full precision
        certified: True if the residual is below the certification threshold
    """

    kind: str
    coefficients: Tuple[int, ...]
    residual: mpmath.mpf
    certified: bool

    def __post_init__(self) -> None:
        if self.kind not in (LINEAR_RELATION, MIN_POLYNOMIAL):
            raise ValueError(f"kind must be {LINEAR_RELATION} or {MIN_POLYNOMIAL}, got {self.kind}")
        if not any(self.coefficients):
            raise ValueError("coefficients must not all be zero")

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coefficients)

    @property
    def polynomial(self) -> IntPolynomial:
        return IntPolynomial.from_list(self.coefficients)

    def as_coordinates(self) -> List[Fraction]:
        """Solve a0 v + sum a_i w_i = 0 for v = sum c_i w_i."""
        head, *rest = self.coefficients
        if head == 0:
            raise NoRelation("relation does not involve the value being recognised")
        return [Fraction(-a, head) for a in rest]


def _normalize(coeffs: Sequence[int], leading_last: bool) -> Tuple[int, ...]:
    """Divide out the content and fix the sign of the first (or last) nonzero entry."""
    g = reduce(math.gcd, (abs(c) for c in coeffs), 0)
    coeffs = [c // g for c in coeffs]
    pivots = [c for c in coeffs if c]
    pivot = pivots[-1] if leading_last else pivots[0]
    if pivot < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _relation_residual(coeffs: Sequence[int], values: Sequence[mpmath.mpc]) -> mpmath.mpf:
    terms = [c * v for c, v in zip(coeffs, values)]
    scale = max((abs(t) for t in terms), default=mpmath.mpf(0))
    if scale == 0:
        return mpmath.inf
    return abs(mpmath.fsum(terms)) / scale


def certification_threshold(prec: int) -> mpmath.mpf:
    return mpmath.mpf(10) ** (-(prec_to_digits(prec) // 2))


def is_certified(coeffs: Sequence[int], residual: mpmath.mpf, prec: int) -> bool:
    """Residual below 10^(-digits/2) with room left in the precision.

    A relation among m values with height H only carries information when
    m log10(H) stays below digits/2; past that, lattice reduction finds
    spurious relations of equally small residual.
    """
    digits = prec_to_digits(prec)
    height = max(abs(c) for c in coeffs)
    entropy = len(coeffs) * math.log10(max(height, 1))
    return bool(residual < certification_threshold(prec)) and entropy < digits / 2


def _candidates(values: Sequence[mpmath.mpc], digits: int) -> List[Tuple[int, ...]]:
    """Coefficient vectors read off the LLL-reduced relation lattice."""
    m = len(values)
    scale = mpmath.mpf(10) ** max(1, digits - GUARD_DIGITS)
    complex_input = any(mpmath.im(v) != 0 for v in values)
    rows = []
    for i, v in enumerate(values):
        row = [int(i == j) for j in range(m)]
        row.append(int(mpmath.nint(scale * mpmath.re(v))))
        if complex_input:
            row.append(int(mpmath.nint(scale * mpmath.im(v))))
        rows.append(row)
    reduced = lll(LatticeBasis.from_rows(rows), DEFAULT_DELTA)
    return [tuple(row[:m]) for row in reduced.rows if any(row[:m])]


def _best_relation(
    values: Sequence[mpmath.mpc],
    prec: int,
    bound: Optional[int],
    leading_last: bool
) -> Tuple[Tuple[int, ...], mpmath.mpf]:
    digits = prec_to_digits(prec)
    best = None
    for candidate in _candidates(values, digits):
        if bound is not None and max(abs(c) for c in candidate) > bound:
            continue
        coeffs = _normalize(candidate, leading_last)
        residual = _relation_residual(coeffs, values)
        key = (residual, max(abs(c) for c in coeffs))
        if best is None or key < best[0]:
            best = (key, coeffs)
    if best is None:
        raise NoRelation(f"no relation among {len(values)} values with height <= {bound}")
    return best[1], best[0][0]


def lindep(
    values: Sequence[Value],
    prec: int,
    bound: Optional[int] = None,
    require_certified: bool = False
) -> RecognitionResult:
    """Find a small integer vector c with sum c_i v_i close to zero.

    Args:
        values: Real or complex values, at least two
        prec: Precision of the values in bits
        bound: Maximal coefficient height, None for no bound
        require_certified: Raise instead of returning an uncertified result

    Returns:
        RecognitionResult of kind LINEAR_RELATION, first nonzero entry positive

    Raises:
        NoRelation: If no candidate respects the bound, or none certifies
            and require_certified is set
    """
    if len(values) < 2:
        raise DimensionMismatch(f"lindep needs at least 2 values, got {len(values)}")
    with mpmath.workprec(prec):
        vs = [to_mpc(v) for v in values]
        coeffs, residual = _best_relation(vs, prec, bound, leading_last=False)
        certified = is_certified(coeffs, residual, prec)
    return _finish(RecognitionResult(LINEAR_RELATION, coeffs, residual, certified), require_certified)


def algdep(
    u: Value,
    maxdeg: int,
    prec: int,
    bound: Optional[int] = None,
    require_certified: bool = False
) -> RecognitionResult:
    """Find an integer polynomial of degree <= maxdeg vanishing near u.

    Args:
        u: Value to recognise
        maxdeg: Maximal degree
        prec: Precision of u in bits
        bound: Maximal coefficient height, None for no bound
        require_certified: Raise instead of returning an uncertified result

    Returns:
        RecognitionResult of kind MIN_POLYNOMIAL, coefficients lowest degree
        first, content 1 and positive leading coefficient

    Raises:
        NoRelation: If no candidate respects the bound, or none certifies
            and require_certified is set
    """
    if maxdeg < 1:
        raise ValueError(f"maxdeg must be >= 1, got {maxdeg}")
    with mpmath.workprec(prec):
        x = to_mpc(u)
        powers = [x ** j for j in range(maxdeg + 1)]
        coeffs, _ = _best_relation(powers, prec, bound, leading_last=True)
        poly = IntPolynomial.from_list(coeffs)
        residual = integer_polynomial_residual(poly, x)
        certified = is_certified(poly.coeffs, residual, prec)
    result = RecognitionResult(MIN_POLYNOMIAL, poly.coeffs, residual, certified)
    logger.debug(f"algdep degree <= {maxdeg}: {poly} (residual {mpmath.nstr(residual, 5)})")
    return _finish(result, require_certified)


def integer_polynomial_residual(poly: IntPolynomial, x: mpmath.mpc) -> mpmath.mpf:
    """|P(x)| / (||P|| max(1, |x|)^deg), at the current working precision."""
    scale = poly.norm * max(mpmath.mpf(1), abs(x)) ** poly.degree
    return abs(poly.evaluate(x)) / scale


def _finish(result: RecognitionResult, require_certified: bool) -> RecognitionResult:
    if not result.certified:
        if require_certified:
            raise NoRelation(
                f"best relation {list(result.coefficients)} has residual "
                f"{mpmath.nstr(result.residual, 5)} above the certification threshold"
            )
        logger.warning(
            f"uncertified relation {list(result.coefficients)} "
            f"(residual {mpmath.nstr(result.residual, 5)})"
        )
    return result


def relative_lindep(
    value: Value,
    basis: Sequence[BigComplex],
    prec: int,
    bound: Optional[int] = None,
    require_certified: bool = False
) -> RecognitionResult:
    """Recognise a value as a rational combination of embedded basis elements.

    Args:
        value: Value to recognise
        basis: Embedded Z-basis of K (power or integral basis)
        prec: Precision in bits
        bound: Maximal coefficient height of the relation
        require_certified: Raise instead of returning an uncertified result

    Returns:
        Relation (a0, a1, ..., an) with a0 value + sum a_i w_i = 0;
        ``as_coordinates()`` gives the coordinates of the value

    Raises:
        NoRelation: If the relation does not involve the value
    """
    result = lindep([value] + list(basis), prec, bound, require_certified)
    if result.coefficients[0] == 0:
        raise NoRelation("basis elements are dependent; value not involved")
    return result


def recognize_element(
    value: Value,
    field: NumberField,
    prec: int,
    bound: Optional[int] = None
) -> Tuple[NumberFieldElement, RecognitionResult]:
    """Recognise a value as an element of K through its integral basis."""
    basis = field.embed_generator_powers(prec)
    result = relative_lindep(value, basis, prec, bound)
    return field.from_basis(result.as_coordinates()), result


def elementary_symmetric(values: Sequence[mpmath.mpc]) -> List[mpmath.mpc]:
    """Coefficients of prod (X - v), lowest degree first, monic."""
    coeffs = [mpmath.mpc(1)]
    for v in values:
        shifted = [mpmath.mpc(0)] + coeffs
        for i in range(len(coeffs)):
            shifted[i] -= v * coeffs[i]
        coeffs = shifted
    return coeffs


def relative_polynomial(
    values: Sequence[BigComplex],
    field: NumberField,
    prec: int,
    bound: Optional[int] = None
) -> Tuple[Tuple[NumberFieldElement, ...], List[RecognitionResult]]:
    """Recognise prod (X - u_k) as a polynomial over K.

    Args:
        values: All conjugates u_k
        field: Base field K
        prec: Precision of the values in bits
        bound: Maximal height of each coefficient relation

    Returns:
        Monic coefficients over K, lowest degree first, and the relation
        found for each non-leading coefficient
    """
    if not values:
        raise ValueError("relative_polynomial needs at least one value")
    with mpmath.workprec(prec):
        sym = elementary_symmetric([v.value for v in values])
        elements = []
        results = []
        for c in sym[:-1]:
            element, result = recognize_element(BigComplex.from_mpc(c, prec), field, prec, bound)
            elements.append(element)
            results.append(result)
    elements.append(field.one())
    uncertified = sum(not r.certified for r in results)
    logger.info(
        f"relative polynomial of degree {len(values)} recognised"
        + (f", {uncertified} coefficients uncertified" if uncertified else "")
    )
    return tuple(elements), results


def palindrome_check(poly: Union[IntPolynomial, Sequence]) -> bool:
    """True if the coefficient list equals its reverse."""
    coeffs = list(poly.coeffs) if isinstance(poly, IntPolynomial) else list(poly)
    return coeffs == list(reversed(coeffs))
