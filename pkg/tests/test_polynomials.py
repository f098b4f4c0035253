# tests/test_polynomials.py
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ringlab.errors import PreconditionError, SpecParseError
from ringlab.polynomials import IntPolynomial, content

coefficient_lists = st.lists(st.integers(-20, 20), max_size=6)


def test_parse_and_format():
    q = IntPolynomial.parse("1, 2,0,")
    assert q.coefficients == (1, 2)
    assert q.to_text() == "1,2"
    assert IntPolynomial().to_text() == "0"
    assert str(IntPolynomial((0, 3, 1))) == "x**2 + 3*x"


def test_parse_rejects_garbage():
    with pytest.raises(SpecParseError):
        IntPolynomial.parse("1,a,3")


def test_properties():
    q = IntPolynomial((3, 0, 2))
    assert q.degree == 2
    assert q.leading_coefficient == 2
    assert not q.is_monic
    assert q.constant_term == 3
    assert q.fits(2, 3) and not q.fits(1, 3) and not q.fits(2, 2)
    assert IntPolynomial().fits(0, 0)
    with pytest.raises(PreconditionError):
        IntPolynomial().degree


def test_divmod_monic():
    quotient, remainder = IntPolynomial((2, 3, 1)).divmod_monic(IntPolynomial((1, 1)))
    assert quotient == IntPolynomial((2, 1))
    assert remainder.is_zero
    with pytest.raises(PreconditionError):
        IntPolynomial((1, 1)).divmod_monic(IntPolynomial((1, 2)))


def test_reduce_and_compose():
    assert IntPolynomial((5, 3)).reduce_mod(4) == IntPolynomial((1, 3))
    assert IntPolynomial((5, 3)).reduce_mod(4, symmetric=True) == IntPolynomial((1, -1))
    assert IntPolynomial((0, 0, 1)).compose(IntPolynomial((1, 1))) == IntPolynomial((1, 2, 1))
    assert IntPolynomial((1, 2)).shift(2) == IntPolynomial((0, 0, 1, 2))
    assert IntPolynomial.monomial(3, 2) == IntPolynomial((0, 0, 3))


def test_content():
    assert content(IntPolynomial((4, 6))) == 2
    assert content(IntPolynomial((0, -3, 1))) == 1
    with pytest.raises(PreconditionError):
        content(IntPolynomial())


def test_evaluate_at_fraction():
    assert IntPolynomial((0, 0, 3)).evaluate_at(Fraction(1, 2)) == Fraction(3, 4)
    assert IntPolynomial((-1, 3)).evaluate_at(Fraction(1, 2)) == Fraction(1, 2)


@given(coefficient_lists, coefficient_lists, st.fractions(max_denominator=12))
def test_ring_operations_commute_with_evaluation(p, q, value):
    p, q = IntPolynomial(p), IntPolynomial(q)
    assert (p + q).evaluate_at(value) == p.evaluate_at(value) + q.evaluate_at(value)
    assert (p - q).evaluate_at(value) == p.evaluate_at(value) - q.evaluate_at(value)
    assert (p * q).evaluate_at(value) == p.evaluate_at(value) * q.evaluate_at(value)
    assert p.compose(q).evaluate_at(value) == p.evaluate_at(q.evaluate_at(value))


@given(coefficient_lists, st.lists(st.integers(-20, 20), max_size=4))
def test_division_by_monic_reconstructs(p, tail):
    p, divisor = IntPolynomial(p), IntPolynomial(tail + [1])
    quotient, remainder = p.divmod_monic(divisor)
    assert quotient * divisor + remainder == p
    assert remainder.is_zero or remainder.degree < divisor.degree
