"""Tests for number field arithmetic."""

from fractions import Fraction

import mpmath
import pytest

from src.errors import DimensionMismatch, DivisionByZero
from src.mpnum.polynomial import IntPolynomial
from src.nfield.field import NumberField, nf_arith


@pytest.fixture
def gaussian():
    """Q(i)."""
    return NumberField(IntPolynomial.from_list([1, 0, 1]))


@pytest.fixture
def cubic():
    """Q[x]/(x^3 - x^2 + 5x - 2)."""
    return NumberField(IntPolynomial.from_list([-2, 5, -1, 1]))


@pytest.fixture
def quartic_q7():
    """Quartic field with a non-power integral basis (denominator 5)."""
    poly = IntPolynomial.from_list([16, -11, -4, -1, 1])
    basis = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [Fraction(-4, 5), Fraction(-2, 5), Fraction(-2, 5), Fraction(1, 5)],
        [Fraction(-23, 5), Fraction(-9, 5), Fraction(1, 5), Fraction(2, 5)],
    ]
    return NumberField.from_basis_strings(poly, basis)


class TestNumberFieldInit:
    """Test field construction."""

    def test_power_basis_default(self, cubic):
        """Test default integral basis is the power basis."""
        basis = cubic.integral_basis
        assert [b.coeffs for b in basis] == [
            (1, 0, 0), (0, 1, 0), (0, 0, 1)
        ]

    def test_constant_polynomial_rejected(self):
        """Test error on degree 0."""
        with pytest.raises(ValueError, match="degree must be >= 1"):
            NumberField(IntPolynomial.from_list([3]))

    def test_basis_wrong_size(self):
        """Test error on basis with wrong number of vectors."""
        with pytest.raises(DimensionMismatch):
            NumberField(IntPolynomial.from_list([1, 0, 1]), ((1, 0),))

    def test_basis_dependent(self):
        """Test error on linearly dependent basis."""
        with pytest.raises(ValueError, match="linearly independent"):
            NumberField(IntPolynomial.from_list([1, 0, 1]), ((1, 0), (2, 0)))


class TestNfArith:
    """Test exact field operations."""

    def test_i_squared(self, gaussian):
        """Test z*z = -1 in Q(i)."""
        z = gaussian.generator()
        assert nf_arith(z, z, "mul") == gaussian.element([-1])

    def test_inverse_of_i(self, gaussian):
        """Test inv(z) = -z in Q(i)."""
        z = gaussian.generator()
        assert nf_arith(z, None, "inv") == gaussian.element([0, -1])

    def test_unit_inverse(self, cubic):
        """Test eps * eps^-1 = 1 for eps = z^2 + 2z - 1."""
        z = cubic.generator()
        eps = z * z + 2 * z - 1
        assert nf_arith(eps, eps.inverse(), "mul") == cubic.one()

    def test_add(self, cubic):
        """Test addition."""
        a = cubic.element([1, 2, 3])
        b = cubic.element([Fraction(1, 2), 0, -3])
        assert nf_arith(a, b, "add") == cubic.element([Fraction(3, 2), 2, 0])

    def test_reduction(self, cubic):
        """Test z^3 reduces to z^2 - 5z + 2."""
        z = cubic.generator()
        assert (z ** 3).coeffs == (2, -5, 1)

    def test_inverse_of_zero(self, cubic):
        """Test error on inv(0)."""
        with pytest.raises(DivisionByZero):
            nf_arith(cubic.zero(), None, "inv")

    def test_unknown_op(self, cubic):
        """Test error on unknown operation."""
        with pytest.raises(ValueError, match="op must be one of"):
            nf_arith(cubic.one(), cubic.one(), "sub")

    def test_negative_power(self, cubic):
        """Test negative exponent uses the inverse."""
        z = cubic.generator()
        assert z ** -2 * z ** 2 == cubic.one()

    def test_trace(self, gaussian, cubic):
        """Test traces of simple elements."""
        assert gaussian.one().trace() == 2
        assert gaussian.generator().trace() == 0
        # sum of roots of x^3 - x^2 + 5x - 2
        assert cubic.generator().trace() == 1


class TestCoordinates:
    """Test integral basis coordinates."""

    def test_power_basis_coordinates(self, cubic):
        """Test coordinates equal coefficients for the power basis."""
        x = cubic.element([3, -1, 7])
        assert cubic.coordinates(x) == (3, -1, 7)

    def test_round_trip(self, quartic_q7):
        """Test from_basis inverts coordinates."""
        x = quartic_q7.element([Fraction(1, 5), 2, -3, Fraction(7, 5)])
        assert quartic_q7.from_basis(quartic_q7.coordinates(x)) == x

    def test_printed_coefficient_is_integral(self, quartic_q7):
        """Test the printed X^11 coefficient has integral coordinates."""
        coefficient = quartic_q7.element([
            Fraction(50793489608, 5),
            Fraction(-57839312901, 5),
            Fraction(6736333629, 5),
            Fraction(2336913308, 5),
        ])
        coords = quartic_q7.coordinates(coefficient)
        assert coords == (18874324715, -8351065208, -2227150790, 2282032049)

    def test_wrong_length(self, cubic):
        """Test error on wrong coordinate count."""
        with pytest.raises(DimensionMismatch):
            cubic.from_basis([1, 2])


class TestEmbedding:
    """Test complex embedding."""

    def test_embed_i(self, gaussian):
        """Test z maps to i."""
        value = gaussian.embed(gaussian.generator(), 128)
        assert abs(value.im - 1) < mpmath.ldexp(1, -120)

    def test_embedding_is_multiplicative(self, cubic):
        """Test embed(a*b) = embed(a)*embed(b)."""
        prec = 200
        z = cubic.generator()
        a = z * z + 2 * z - 1
        b = 3 * z - Fraction(1, 7)
        lhs = cubic.embed(a * b, prec)
        rhs = cubic.embed(a, prec) * cubic.embed(b, prec)
        with mpmath.workprec(prec):
            assert abs(lhs.value - rhs.value) < abs(lhs.value) * mpmath.ldexp(1, -prec + 10)

    def test_foreign_element_rejected(self, cubic, gaussian):
        """Test error when embedding an element of another field."""
        with pytest.raises(DimensionMismatch):
            cubic.embed(gaussian.generator(), 128)
