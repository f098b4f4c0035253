# tests/test_localized.py
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ringlab.errors import PreconditionError, SpecParseError
from ringlab.graph_kit import complete_with_loops, isomorphic
from ringlab.localized import (
    LocalizedRational, PrimeSupport, class_representative, constructive_witness, divisor_count,
    lambda1_localized, loc_arith, membership_witness, parse_localized, representative_witness,
)
from ringlab.models import ArithOp, WitnessStatus
from ringlab.polynomials import IntPolynomial


@st.composite
def localized(draw, m=30):
    primes = PrimeSupport.of(m).primes
    den = 1
    for p in primes:
        den *= p ** draw(st.integers(0, 3))
    num = draw(st.integers(-200, 200))
    return LocalizedRational(m, num, den)


# ----------------- ARITHMETIC -----------------
def test_normalizes_to_lowest_terms():
    a = LocalizedRational(2, 2, 4)
    assert (a.num, a.den) == (1, 2)
    assert LocalizedRational(6, 3, -9) == LocalizedRational(6, -1, 3)


def test_rejects_unsupported_denominator():
    with pytest.raises(PreconditionError):
        LocalizedRational(2, 1, 3)
    with pytest.raises(PreconditionError):
        LocalizedRational(2, 1, 0)
    with pytest.raises(PreconditionError):
        LocalizedRational(0, 1, 1)


def test_arithmetic():
    a, b = LocalizedRational(6, 1, 2), LocalizedRational(6, 1, 3)
    assert loc_arith(a, b, ArithOp.ADD) == LocalizedRational(6, 5, 6)
    assert loc_arith(a, b, ArithOp.MUL) == LocalizedRational(6, 1, 6)
    assert loc_arith(a, None, ArithOp.NEG) == LocalizedRational(6, -1, 2)
    assert a ** 3 == LocalizedRational(6, 1, 8)
    with pytest.raises(PreconditionError):
        loc_arith(a, None, ArithOp.ADD)
    with pytest.raises(PreconditionError):
        a + LocalizedRational(2, 1, 2)


def test_text_forms():
    a = parse_localized("3/4@6")
    assert a == LocalizedRational(6, 3, 4)
    assert a.to_text() == "3/4@6"
    assert str(a) == "3/4"
    assert parse_localized("-7@5") == LocalizedRational(5, -7)
    assert str(LocalizedRational(5, -7)) == "-7"
    for bad in ("3/4", "a/2@6", "1/3@2", "1/2@0"):
        with pytest.raises(SpecParseError):
            parse_localized(bad)


# ----------------- CLASSES -----------------
@pytest.mark.parametrize("text, rep", [
    ("3/4@6", "1/2@6"),
    ("5/12@6", "1/6@6"),
    ("7@5", "1/1@5"),
    ("-9/8@2", "1/2@2"),
    ("11/90@30", "1/30@30"),
])
def test_class_representative(text, rep):
    assert class_representative(parse_localized(text)).to_text() == rep


def test_divisor_count():
    assert [divisor_count(n) for n in (1, 2, 6, 12, 16)] == [1, 2, 4, 6, 5]
    with pytest.raises(PreconditionError):
        divisor_count(0)


def test_prime_support():
    support = PrimeSupport.of(30)
    assert support.primes == (2, 3, 5)
    assert support.s == 3
    assert [str(r) for r in support.representatives(30)] == \
        ["1", "1/2", "1/3", "1/5", "1/6", "1/10", "1/15", "1/30"]
    assert PrimeSupport.of(1).representatives(1) == [LocalizedRational(1, 1)]


@pytest.mark.parametrize("m, s", [(1, 0), (2, 1), (6, 2), (12, 2), (30, 3), (210, 4)])
def test_lambda1_localized(m, s):
    graph = lambda1_localized(m)
    assert graph.vertex_count == 2 ** s
    assert isomorphic(graph, complete_with_loops(2 ** s)).found


# ----------------- WITNESSES -----------------
def test_representative_witness_formula():
    a = LocalizedRational(2, 3, 4)
    assert representative_witness(a) == IntPolynomial((-4, 6))
    assert representative_witness(LocalizedRational(2, 5)) == IntPolynomial.constant(1)


def test_constructive_witness():
    half = LocalizedRational(2, 1, 2)
    assert constructive_witness(half, LocalizedRational(2, 3, 4)) == IntPolynomial((0, 0, 3))
    assert constructive_witness(half, half) == IntPolynomial.x()
    assert constructive_witness(half, LocalizedRational(2, 5)) == IntPolynomial.constant(5)
    assert constructive_witness(LocalizedRational(6, 1, 2), LocalizedRational(6, 1, 3)) is None


@given(localized(), localized())
def test_constructive_witness_hits_target(a, target):
    q = constructive_witness(a, target)
    supported = all(a.den % p == 0 for p in PrimeSupport.of(target.den).primes)
    assert (q is not None) == supported
    if q is not None:
        assert q.evaluate_at(a.value) == target.value


@given(localized())
def test_element_and_representative_generate_each_other(a):
    rep = class_representative(a)
    assert representative_witness(a).evaluate_at(a.value) == rep.value
    assert constructive_witness(a, rep) is not None
    assert constructive_witness(rep, a) is not None


def test_membership_witness_statuses():
    half = LocalizedRational(2, 1, 2)
    found = membership_witness(half, LocalizedRational(2, 3, 4))
    assert found.status == WitnessStatus.FOUND and found.found
    assert found.polynomial.evaluate_at(Fraction(1, 2)) == Fraction(3, 4)

    excluded = membership_witness(LocalizedRational(6, 1, 2), LocalizedRational(6, 1, 3))
    assert excluded.status == WitnessStatus.EXCLUDED

    unresolved = membership_witness(half, LocalizedRational(2, 1001, 1024), 2, 3)
    assert unresolved.status == WitnessStatus.UNRESOLVED
    assert unresolved.polynomial is None


def test_membership_within_tight_bounds():
    third = LocalizedRational(3, 1, 3)
    result = membership_witness(third, LocalizedRational(3, 2, 9), 2, 2)
    assert result.found
    assert result.polynomial.evaluate_at(Fraction(1, 3)) == Fraction(2, 9)


def test_membership_search_used_when_constructive_is_large():
    a = LocalizedRational(6, 5, 6)
    target = LocalizedRational(6, 1, 6)
    assert constructive_witness(a, target) == IntPolynomial((-4, 5))
    result = membership_witness(a, target, 1, 4)
    assert result.found
    assert result.polynomial == IntPolynomial((1, -1))


def test_distinct_representatives_never_reach_each_other():
    representatives = PrimeSupport.of(30).representatives(30)
    assert len(representatives) == 8
    for i, b in enumerate(representatives):
        for c in representatives[i + 1:]:
            statuses = {membership_witness(b, c).status, membership_witness(c, b).status}
            assert WitnessStatus.EXCLUDED in statuses, (str(b), str(c))
