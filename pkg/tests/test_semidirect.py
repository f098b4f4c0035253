# tests/test_semidirect.py
from fractions import Fraction

import numpy as np
import pytest

from ringlab.errors import ActionValidationError, PreconditionError, SemidirectDataError, SpecParseError
from ringlab.finite_ring import null_ring, validate_ring, z_mod
from ringlab.graph_kit import complete_with_loops, disjoint_union, isomorphic, join
from ringlab.localized import LocalizedRational, class_representative
from ringlab.models import WitnessBounds, WitnessStatus
from ringlab.polynomials import IntPolynomial
from ringlab.semidirect import (
    ActionTables, SemidirectData, canonicalize, check_prop_iso, lambda1_semidirect,
    load_semidirect_data, localized_semidirect, natural_action, sd_membership, sd_power,
    semidirect_finite, stabilize_power_functions, unitalization,
)
from ringlab.subring_compress import compressed_commuting_graph


@pytest.fixture
def direct(golden):
    return localized_semidirect(load_semidirect_data(str(golden / "directproduct.json")))


@pytest.fixture
def negation(golden):
    return localized_semidirect(load_semidirect_data(str(golden / "negation.json")))


# ----------------- UNITALIZATION -----------------
def test_unitalization_of_null_ring():
    unital = unitalization(null_ring(2))
    assert unital.order == 4
    assert unital.identity == 2
    report = validate_ring(unital)
    assert report.is_ring and report.is_unital


def test_unitalization_keeps_ids_of_r():
    R = z_mod(3)
    unital = unitalization(R)
    assert unital.order == 9
    for a in range(3):
        for b in range(3):
            assert int(unital.mul(a, b)) == int(R.mul(a, b))


@pytest.mark.parametrize("ring", [z_mod(4), z_mod(6), null_ring(4), null_ring(3)])
def test_prop_iso(ring):
    result = check_prop_iso(ring)
    assert result.holds
    assert len(set(result.bijection.values())) == len(result.bijection)


# ----------------- FINITE PRODUCTS -----------------
def test_natural_action_product():
    Z, I = z_mod(2), null_ring(2)
    product = semidirect_finite(Z, I, natural_action(Z, I))
    assert product.order == 4
    assert product.identity == 2
    assert validate_ring(product).is_ring


def test_natural_action_needs_dividing_characteristic():
    with pytest.raises(PreconditionError):
        natural_action(z_mod(2), null_ring(3))
    with pytest.raises(PreconditionError):
        natural_action(null_ring(2), null_ring(2))


def test_invalid_action_reports_witness():
    Z, I = z_mod(2), null_ring(2)
    bad = ActionTables(left=np.array([[0, 0], [1, 1]]), right=natural_action(Z, I).right)
    with pytest.raises(ActionValidationError) as info:
        semidirect_finite(Z, I, bad)
    assert "left_additive_in_x" in [name for name, _ in info.value.failures]


def test_action_with_wrong_shape():
    Z, I = z_mod(2), null_ring(2)
    with pytest.raises(ActionValidationError):
        semidirect_finite(Z, I, ActionTables(left=np.zeros((3, 2), dtype=np.int64),
                                             right=np.zeros((2, 2), dtype=np.int64)))


# ----------------- DATA -----------------
def test_load_golden_data(golden):
    data = load_semidirect_data(str(golden / "negation.json"))
    assert data.m == 2
    assert data.ideal.order == 3
    assert data.L.tolist() == [0, 2, 1]


def test_missing_data_file(tmp_path):
    with pytest.raises(SpecParseError):
        load_semidirect_data(str(tmp_path / "absent.json"))


def test_malformed_data_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"m": 0, "ideal": "z:2", "e": 1, "L": [0, 0], "Rm": [0, 0]}')
    with pytest.raises(SpecParseError):
        load_semidirect_data(str(path))


def test_non_unital_data_is_rejected():
    data = SemidirectData(m=2, ideal=z_mod(2), e=0, L=[0, 0], Rm=[0, 0])
    with pytest.raises(SemidirectDataError) as info:
        localized_semidirect(data)
    assert "left_unit" in [name for name, _ in info.value.failures]


def test_data_tables_must_fit_ideal():
    with pytest.raises(SemidirectDataError):
        localized_semidirect(SemidirectData(m=2, ideal=z_mod(2), e=1, L=[0, 2], Rm=[0, 0]))
    with pytest.raises(SemidirectDataError):
        localized_semidirect(SemidirectData(m=2, ideal=z_mod(2), e=5, L=[0, 0], Rm=[0, 0]))


# ----------------- ARITHMETIC -----------------
def test_identity_and_product(direct):
    assert direct.identity == direct.element(1, 1)
    u = direct.element(Fraction(1, 2), 1)
    assert direct.mul(u, u) == direct.element(Fraction(1, 4), 1)
    assert direct.mul(direct.identity, u) == u
    assert direct.mul(u, direct.identity) == u
    assert sd_power(direct, u, 3) == direct.element(Fraction(1, 8), 1)
    with pytest.raises(PreconditionError):
        sd_power(direct, u, 0)


def test_element_checks_ideal(direct):
    with pytest.raises(PreconditionError):
        direct.element(1, 2)


def test_identity_in_negation_example(negation):
    assert negation.identity == negation.element(1, 0)
    for x in range(3):
        u = negation.element(Fraction(3, 2), x)
        assert negation.mul(negation.identity, u) == u
        assert negation.mul(u, negation.identity) == u


def test_evaluate_uses_identity_for_constant(direct):
    u = direct.element(Fraction(1, 2), 0)
    assert direct.evaluate(IntPolynomial.constant(3), u) == direct.element(3, 1)


def test_power_functions_cycle(direct, negation):
    cycle = stabilize_power_functions(direct, LocalizedRational(2, 3, 4))
    assert (cycle.u, cycle.v) == (2, 1)
    assert cycle.polynomial == IntPolynomial((0, -1, 1))
    cycle = stabilize_power_functions(negation, LocalizedRational(2, 1, 2))
    assert (cycle.u, cycle.v) == (2, 1)


# ----------------- MEMBERSHIP -----------------
def test_membership_found(direct):
    result = sd_membership(direct, direct.element(Fraction(1, 2), 0), direct.element(Fraction(1, 2), 1))
    assert result.found
    assert result.polynomial == IntPolynomial((-1, 3))

    result = sd_membership(direct, direct.element(1, 0), direct.element(1, 1))
    assert result.found
    assert result.polynomial == IntPolynomial((-1, 2))


def test_membership_excluded(direct):
    # (1, 1) is the identity, its subring is Z·(1, 1)
    result = sd_membership(direct, direct.element(1, 1), direct.element(1, 0))
    assert result.status == WitnessStatus.EXCLUDED


def test_membership_excluded_by_denominator(golden):
    data = load_semidirect_data(str(golden / "directproduct.json"))
    data.m = 6
    h = localized_semidirect(data)
    result = sd_membership(h, h.element(Fraction(1, 2), 0), h.element(Fraction(1, 3), 0))
    assert result.status == WitnessStatus.EXCLUDED


def test_membership_unresolved_at_degree_zero(negation):
    result = sd_membership(negation, negation.element(1, 1), negation.element(1, 2),
                           WitnessBounds(degree=0, coefficient=32))
    assert result.status == WitnessStatus.UNRESOLVED
    assert result.polynomial.evaluate_at(1) == 1


def test_canonicalize(direct):
    form = canonicalize(direct, direct.element(Fraction(3, 4), 0))
    assert form.element == direct.element(Fraction(1, 2), 0)
    assert form.status == WitnessStatus.FOUND
    assert (form.cycle.u, form.cycle.v) == (2, 1)
    assert direct.evaluate(form.forward.polynomial, direct.element(Fraction(3, 4), 0)) == form.element


# ----------------- GRAPHS -----------------
def test_direct_product_graph(direct):
    report = lambda1_semidirect(direct)
    assert report.complete and report.within_bound
    assert report.candidate_count == 4
    assert report.graph.vertex_count == 3
    assert isomorphic(report.graph, complete_with_loops(3)).found
    for merge in report.merges:
        assert direct.evaluate(merge.forward, merge.source) == merge.target
        assert direct.evaluate(merge.backward, merge.target) == merge.source


def test_negation_graph(negation):
    report = lambda1_semidirect(negation)
    assert report.complete
    assert report.candidate_count == 6
    assert report.graph.vertex_count == 4
    assert isomorphic(report.graph, complete_with_loops(4)).found
    assert len(report.merges) == 2


def test_negation_graph_unresolved_at_degree_zero(negation):
    report = lambda1_semidirect(negation, WitnessBounds(degree=0, coefficient=32))
    assert not report.complete
    assert ("(1, 1)", "(1, 2)") in report.unresolved


def test_upper_triangular_graph(golden, t2):
    h = localized_semidirect(load_semidirect_data(str(golden / "upper_triangular.json")))
    report = lambda1_semidirect(h)
    assert report.complete
    assert report.candidate_count == 8
    assert report.bound == 8
    assert report.graph.vertex_count == 8
    assert isomorphic(report.graph, compressed_commuting_graph(t2)).found
    expected = join(complete_with_loops(2), disjoint_union(3, complete_with_loops(2)))
    assert isomorphic(report.graph, expected).found


# ----------------- TRIVIAL IDEAL AND WITNESS SEARCH -----------------
@pytest.fixture
def sixths():
    return localized_semidirect(SemidirectData(m=6, ideal=z_mod(1), e=0, L=[0], Rm=[0]))


def test_negation_square_keeps_ideal_part(negation):
    for r in range(3):
        assert sd_power(negation, negation.element(Fraction(1, 2), r), 2) == \
            negation.element(Fraction(1, 4), r)


def test_power_functions_on_trivial_ideal(sixths):
    for value in (Fraction(1, 6), Fraction(5, 12), Fraction(-7, 18), Fraction(3)):
        cycle = stabilize_power_functions(sixths, LocalizedRational.of(6, value))
        assert (cycle.u, cycle.v) == (2, 1)


@pytest.mark.parametrize("value", [Fraction(5, 12), Fraction(3, 4), Fraction(7, 18), Fraction(-1, 2), Fraction(5)])
def test_canonicalize_on_trivial_ideal_matches_class_representative(sixths, value):
    a = LocalizedRational.of(6, value)
    form = canonicalize(sixths, sixths.element(a, 0))
    assert form.element == sixths.element(class_representative(a), 0)
    assert form.status != WitnessStatus.EXCLUDED


def test_canonicalize_reduces_oversized_witness(sixths):
    form = canonicalize(sixths, sixths.element(Fraction(5, 12), 0))
    assert form.element == sixths.element(Fraction(1, 6), 0)
    assert form.status == WitnessStatus.FOUND
    assert form.backward.polynomial.fits(4, 10)
    assert sixths.evaluate(form.backward.polynomial, form.element) == sixths.element(Fraction(5, 12), 0)


def test_membership_search_finds_small_witness():
    h = localized_semidirect(SemidirectData(m=2, ideal=z_mod(1), e=0, L=[0], Rm=[0]))
    result = sd_membership(h, h.element(Fraction(1, 2), 0), h.element(Fraction(3, 2), 0),
                           WitnessBounds(degree=2, coefficient=1))
    assert result.found
    assert result.polynomial == IntPolynomial((1, 1))


def test_membership_reduces_ideal_coefficients(direct):
    result = sd_membership(direct, direct.element(Fraction(1, 2), 0), direct.element(Fraction(3, 2), 1),
                           WitnessBounds(degree=2, coefficient=1))
    assert result.found
    assert result.polynomial == IntPolynomial((1, 1))


def test_large_denominator_needs_large_witness():
    h = localized_semidirect(SemidirectData(m=30, ideal=z_mod(9), e=1, L=[0] * 9, Rm=[0] * 9))
    source, target = h.element(Fraction(1, 30), 0), h.element(Fraction(1, 30), 1)
    # every q with q(1/30) = 1/30 and q(0) = 1 mod 9 has a coefficient of size >= 29
    result = sd_membership(h, source, target)
    assert result.status == WitnessStatus.UNRESOLVED
    assert result.polynomial == IntPolynomial((1, -29))
    assert sd_membership(h, source, target, WitnessBounds(degree=4, coefficient=29)).found
