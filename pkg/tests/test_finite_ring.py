# tests/test_finite_ring.py
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ringlab.errors import BudgetExceededError, PreconditionError, RingConstructionError, SpecParseError
from ringlab.finite_ring import (
    RuleRing, TableRing, direct_product, frobenius_fixed_count, galois_field, induced_subring,
    matrix_embedding, matrix_ring, null_ring, quotient_ring, realize_complete_graph,
    smallest_irreducible, table_ring_from_file, validate_ring, z_mod, zero_ring,
)
from ringlab.models import Mode
from ringlab.polynomials import IntPolynomial
from ringlab.subring_compress import compressed_commuting_graph


# ----------------- CONSTRUCTORS -----------------
def test_z_mod_basics():
    R = z_mod(6)
    assert R.order == 6 and R.identity == 1 and R.descriptor == "Z_6"
    assert R.is_table_backed
    assert R.characteristic == 6
    assert R.mul(5, 5) == 1
    assert R.neg(2) == 4
    assert list(R.add(np.array([1, 2]), 5)) == [0, 1]


def test_zero_ring():
    R = zero_ring()
    assert R.order == 1 and R.identity == 0 and R.descriptor == "0"
    assert R.characteristic == 1


def test_null_ring():
    R = null_ring(4)
    assert R.identity is None
    assert R.characteristic == 4
    assert int(R.mul(3, 3)) == 0
    with pytest.raises(PreconditionError):
        R.power(1, 0)


def test_elements_support_operators():
    R = z_mod(6)
    assert (R.element(2) * 3).id == 0
    assert (R.element(5) + 4).id == 3
    assert (R.element(1) - 2).id == 5
    assert (-R.element(1)).id == 5
    assert (R.element(2) ** 0).id == 1
    assert (R.element(2) ** 3).id == 2
    with pytest.raises(PreconditionError):
        R.element(6)
    with pytest.raises(PreconditionError):
        R.element(1) + z_mod(6).element(1)


def test_scalar_and_evaluate():
    R = z_mod(6)
    assert R.scalar(-1, 2) == 4
    assert R.scalar(13, 1) == 1
    assert int(R.evaluate(IntPolynomial((0, 3, 1)), 3)) == 0
    assert int(R.evaluate(IntPolynomial((1, 1)), 2)) == 3
    assert list(R.evaluate(IntPolynomial((0, 0, 1)), R.elements())) == [0, 1, 4, 3, 4, 1]
    with pytest.raises(PreconditionError):
        null_ring(3).evaluate(IntPolynomial((1, 1)), 1)


def test_smallest_irreducible():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(2, 3) == (1, 0, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(5, 1) == (0, 1)


def test_galois_field_arithmetic():
    F = galois_field(2, 2)  # x^2 = x + 1, x has id 2
    assert F.descriptor == "GF(2^2)"
    assert F.mul(2, 2) == 3
    assert F.mul(2, 3) == 1
    assert F.characteristic == 2
    assert validate_ring(F).is_ring


def test_galois_field_rejects_bad_input():
    with pytest.raises(RingConstructionError):
        galois_field(4, 1)
    with pytest.raises(RingConstructionError):
        galois_field(2, 2, modulus=(1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(RingConstructionError):
        galois_field(2, 0)


def test_galois_field_other_modulus_same_graph():
    F = galois_field(2, 3, modulus=(1, 1, 0, 1))
    G = galois_field(2, 3)
    assert validate_ring(F).is_ring
    assert compressed_commuting_graph(F, Mode.UNITAL).vertex_count == \
        compressed_commuting_graph(G, Mode.UNITAL).vertex_count == 2


def test_galois_field_is_deterministic():
    F, G = galois_field(3, 4), galois_field(3, 4)
    assert F.order == 81
    assert np.array_equal(F.add_table, G.add_table)
    assert np.array_equal(F.mul_table, G.mul_table)
    assert F.identity == G.identity


def test_frobenius_fixed_points():
    F = galois_field(2, 4)
    assert frobenius_fixed_count(F, 2, 1) == 2
    assert frobenius_fixed_count(F, 2, 2) == 4
    assert frobenius_fixed_count(F, 2, 4) == 16


def test_matrix_rings(gf2, t2, m2):
    assert m2.order == 16 and m2.identity == 9
    assert t2.order == 8 and t2.identity == 5
    assert m2.descriptor == "M_2(GF(2^1))"
    assert t2.descriptor == "T_2(GF(2^1))"
    ids = m2.elements()
    assert not np.all(m2.commutes(ids[:, None], ids[None, :]))
    assert validate_ring(m2).is_ring
    assert validate_ring(t2).is_ring


def test_matrix_embedding_is_a_homomorphism(gf2, t2, m2):
    emb = matrix_embedding(gf2, 2)
    assert emb[5] == 9 and emb[2] == 2 and emb[4] == 8
    a, b = t2.elements()[:, None], t2.elements()[None, :]
    assert np.array_equal(emb[t2.mul(a, b)], m2.mul(emb[a], emb[b]))
    assert np.array_equal(emb[t2.add(a, b)], m2.add(emb[a], emb[b]))


def test_direct_product():
    P = direct_product(z_mod(2), z_mod(3))
    assert P.order == 6 and P.identity == 4
    assert P.characteristic == 6
    assert P.descriptor == "(Z_2 x Z_3)"
    assert validate_ring(P).is_ring


def test_induced_subring():
    S = induced_subring(z_mod(4), [2, 0])
    assert S.order == 2
    assert S.identity is None
    assert validate_ring(S).is_ring
    with pytest.raises(RingConstructionError):
        induced_subring(z_mod(4), [0, 1])


def test_quotient_ring():
    Q, projection = quotient_ring(z_mod(6), [0, 3])
    assert Q.order == 3
    assert list(projection) == [0, 1, 2, 0, 1, 2]
    assert Q.identity == 1
    assert validate_ring(Q).is_ring


def test_table_ring_from_file(golden):
    R = table_ring_from_file(str(golden / "z3_table.json"))
    assert R.order == 3 and R.identity == 1
    assert R.descriptor == "Z_3 (table)"
    assert validate_ring(R).is_ring


def test_table_ring_file_errors(tmp_path):
    with pytest.raises(SpecParseError):
        table_ring_from_file(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 2, "add": [0, 1, 1], "mul": [0, 0, 0, 0]}))
    with pytest.raises(RingConstructionError):
        table_ring_from_file(str(bad))


# ----------------- BUDGETS -----------------
def test_rule_backed_above_threshold(override):
    override(table_threshold=4)
    R = z_mod(5)
    assert isinstance(R, RuleRing)
    assert R.mul(3, 4) == 2
    assert isinstance(R.mul(3, 4), int)
    report = validate_ring(R)
    assert report.is_ring and not report.exhaustive


def test_budget_exceeded(override):
    override(rule_budget=10)
    with pytest.raises(BudgetExceededError):
        z_mod(11)
    with pytest.raises(BudgetExceededError):
        galois_field(2, 4)


# ----------------- VALIDATION -----------------
def test_validate_reports_violations_with_witness():
    broken = TableRing([[0, 1], [1, 0]], [[1, 1], [1, 1]])
    report = validate_ring(broken)
    assert not report.is_ring
    assert not report.is_unital
    failures = {f.axiom: f.witness for f in report.failures}
    assert failures["left_distributivity"] == [0, 0, 0]
    assert failures["right_distributivity"] == [0, 0, 0]
    assert "multiplicative_associativity" not in failures


def test_validate_detects_wrong_identity():
    R = TableRing([[0, 1], [1, 0]], [[0, 0], [0, 1]], identity=0)
    failures = {f.axiom for f in validate_ring(R).failures}
    assert "identity" in failures


def test_table_ring_rejects_bad_tables():
    with pytest.raises(RingConstructionError):
        TableRing([[0, 1], [1, 2]], [[0, 0], [0, 0]])
    with pytest.raises(RingConstructionError):
        TableRing([[0, 1]], [[0, 0]])


@given(st.integers(1, 40))
def test_z_mod_is_a_ring(n):
    R = z_mod(n)
    report = validate_ring(R)
    assert report.is_ring and report.is_unital
    assert report.characteristic == n


@given(st.integers(1, 12), st.integers(1, 12))
def test_products_are_rings(a, b):
    P = direct_product(z_mod(a), null_ring(b))
    report = validate_ring(P)
    assert report.is_ring
    assert report.is_unital == (b == 1)


# ----------------- REALISATION -----------------
@pytest.mark.parametrize("alpha", [1, 2, 3])
@pytest.mark.parametrize("mode", [Mode.UNITAL, Mode.NONUNITAL])
def test_realize_complete_graph(alpha, mode):
    R = realize_complete_graph(alpha, mode)
    graph = compressed_commuting_graph(R, mode)
    assert graph.vertex_count == alpha
    assert graph.edge_count == alpha * (alpha - 1) // 2


def test_realize_limit():
    with pytest.raises(BudgetExceededError):
        realize_complete_graph(5)
    with pytest.raises(PreconditionError):
        realize_complete_graph(0)
