# tests/test_integral.py
import numpy as np
import pytest
from hypothesis import given, strategies as st

from ringlab.errors import PreconditionError
from ringlab.finite_ring import null_ring, z_mod
from ringlab.integral import monic_annihilator
from ringlab.polynomials import IntPolynomial
from ringlab.ring_spec import parse_ring_spec
from ringlab.verification import integral_instance, ring_corpus

UNITAL_CORPUS = [(name, ring) for name, ring in ring_corpus() if ring.identity is not None]


@pytest.mark.parametrize("spec, a, q, expected", [
    ("z:4", 2, "0,2,3", "0,2,1"),
    ("z:6", 3, "3,5", "3,1"),
    ("z:6", 3, "0,3,1", "0,3,1"),
])
def test_worked_examples(spec, a, q, expected):
    ring = parse_ring_spec(spec)
    s = monic_annihilator(ring, a, IntPolynomial.parse(q))
    assert s.to_text() == expected
    assert int(ring.evaluate(s, a)) == ring.zero


def test_trivial_ring():
    assert monic_annihilator(z_mod(1), 0, IntPolynomial((1, 2))) == IntPolynomial.x()


def test_field_element():
    ring = parse_ring_spec("gf:3:2")
    # 3x^2 + x reduces to x modulo 3
    assert monic_annihilator(ring, 0, IntPolynomial((0, 1, 3))) == IntPolynomial.x()


@pytest.mark.parametrize("ring, a, q", [
    (z_mod(4), 2, IntPolynomial((2, 2))),      # content 2
    (z_mod(4), 1, IntPolynomial((1, 2))),      # 3 != 0
    (z_mod(4), 0, IntPolynomial()),
    (null_ring(2), 0, IntPolynomial((0, 3))),  # no identity
])
def test_preconditions(ring, a, q):
    with pytest.raises(PreconditionError):
        monic_annihilator(ring, a, q)


def test_integral_instance_is_valid():
    rng = np.random.default_rng(3)
    for _, ring in UNITAL_CORPUS:
        a = int(rng.integers(ring.order))
        q = integral_instance(ring, a, rng)
        assert int(ring.evaluate(q, a)) == ring.zero
        assert not q.is_monic or ring.characteristic == 1


@given(st.sampled_from(UNITAL_CORPUS), st.integers(0, 2 ** 32 - 1), st.data())
def test_monic_annihilator_over_corpus(entry, seed, data):
    _, ring = entry
    a = data.draw(st.integers(0, ring.order - 1))
    q = integral_instance(ring, a, np.random.default_rng(seed))
    s = monic_annihilator(ring, a, q)
    assert s.is_monic
    assert int(ring.evaluate(s, a)) == ring.zero
