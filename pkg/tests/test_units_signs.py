"""Tests for the exponent sign search."""

from fractions import Fraction

import mpmath
import pytest

from src.errors import Ambiguous, NoMatch
from src.mpnum.bigcomplex import digits_to_prec
from src.mpnum.polynomial import IntPolynomial
from src.nfield.field import NumberField
from src.units.evaluator import eval_term, log_abs_sq
from src.units.signs import all_sign_vectors, printed_tolerance, sign_search
from src.units.spec import UnitTermSpec

PREC = digits_to_prec(30)


@pytest.fixture
def terms():
    """The two theta quotients over Q(e^(2 pi i/3)) for k = 1, 2."""
    field = NumberField(IntPolynomial.from_list([1, 1, 1]))
    tau = 10 + field.generator()
    return [
        UnitTermSpec((tau,), level=91, arg_rational=Fraction(k, 13), smoothing_n=7)
        for k in (1, 2)
    ]


@pytest.fixture
def logs(terms):
    return [log_abs_sq(eval_term(t, PREC)) for t in terms]


class TestPrintedTolerance:
    """Test tolerances derived from printed decimals."""

    def test_seven_decimals(self):
        """Test "3.7519563" gives 1e-7."""
        with mpmath.workprec(PREC):
            assert abs(printed_tolerance("3.7519563") - mpmath.mpf("1e-7")) < mpmath.mpf("1e-20")

    def test_integer(self):
        """Test an integer string gives 1."""
        assert printed_tolerance("12") == 1


class TestSignSearch:
    """Test the meet-in-the-middle search."""

    def test_single_term(self, terms, logs):
        """Test a single term matched against its own log value."""
        assert sign_search(terms[:1], logs[0], PREC) == [1]

    def test_single_term_negative(self, terms, logs):
        """Test the reciprocal is found as nu = -1."""
        assert sign_search(terms[:1], -logs[0], PREC) == [-1]

    def test_two_terms(self, terms, logs):
        """Test each sign vector of two terms is recovered from its log value."""
        for signs in all_sign_vectors(2):
            reference = signs[0] * logs[0] + signs[1] * logs[1]
            assert sign_search(terms, reference, PREC) == signs

    def test_ignores_given_signs(self, terms, logs):
        """Test the signs stored on the terms do not matter."""
        flipped = [t.with_sign(-1) for t in terms]
        assert sign_search(flipped, logs[0] + logs[1], PREC) == [1, 1]

    def test_string_reference(self, terms, logs):
        """Test a printed reference with its implied tolerance."""
        printed = mpmath.nstr(logs[0] - logs[1], 8, strip_zeros=False)
        assert sign_search(terms, printed, PREC) == [1, -1]

    def test_no_match(self, terms):
        """Test NoMatch far from every subset sum."""
        with pytest.raises(NoMatch):
            sign_search(terms, 1000, PREC)

    def test_ambiguous(self, terms, logs):
        """Test a repeated term against zero matches two sign vectors."""
        doubled = [terms[0], terms[0]]
        with pytest.raises(Ambiguous) as info:
            sign_search(doubled, 0, PREC)
        assert sorted(info.value.matches) == [[-1, 1], [1, -1]]

    def test_empty(self):
        """Test error without terms."""
        with pytest.raises(ValueError, match="at least one term"):
            sign_search([], 0, PREC)

    def test_too_many_terms(self, terms):
        """Test error above the search limit."""
        with pytest.raises(ValueError, match="at most 24"):
            sign_search(terms * 13, 0, PREC)


class TestAllSignVectors:
    """Test the brute-force enumeration."""

    def test_count(self):
        """Test 2^m distinct vectors."""
        vectors = all_sign_vectors(4)
        assert len(vectors) == 16
        assert len({tuple(v) for v in vectors}) == 16
