# ringlab/verification.py
"""
Golden verification suites: worked examples and finite theorem instances
("paper" suite) and structural property checks ("properties" suite).
"""
import logging
import time
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ringlab.config import get_settings
from ringlab.errors import RingLabError
from ringlab.finite_ring import (
    Ring, direct_product, galois_field, induced_subring, matrix_ring, null_ring, z_mod
)
from ringlab.graph_kit import (
    CompressedGraph, complete_with_loops, disjoint_union, emit, isomorphic, join, parse_json, relabel
)
from ringlab.integral import monic_annihilator
from ringlab.localized import (
    LocalizedRational, PrimeSupport, class_representative, constructive_witness,
    divisor_count, lambda1_localized
)
from ringlab.models import (
    MatrixShape, Mode, OutputFormat, Suite, VerificationItem, VerificationReport, WitnessBounds
)
from ringlab.polynomials import IntPolynomial, content
from ringlab.semidirect import (
    SemidirectData, check_prop_iso, lambda1_semidirect, localized_semidirect,
    validate_semidirect_data
)
from ringlab.subring_compress import (
    compress_classes, compressed_commuting_graph, edge_well_definedness_witness,
    unital_subring_lattice
)

logger = logging.getLogger(__name__)

FIELD_CASES = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (2, 8), (3, 2), (3, 4), (5, 2)]
LOCALIZATION_MODULI = [1, 2, 6, 12, 30, 210]
# random data has m up to 35 and |I| <= 9: same-block witnesses x + (Dx - n)g stay inside these
RANDOM_MERGE_BOUNDS = WitnessBounds(degree=16, coefficient=10_000)


# ===================== CORPUS =====================
def ring_corpus() -> List[Tuple[str, Ring]]:
    """Finite rings of order <= 64 used across the suites"""
    gf2 = galois_field(2, 1)
    corpus = [(f"z:{n}", z_mod(n)) for n in range(1, 17)]
    corpus += [
        ("gf:2:2", galois_field(2, 2)),
        ("gf:2:3", galois_field(2, 3)),
        ("gf:3:2", galois_field(3, 2)),
        ("tri:gf:2:1:2", matrix_ring(gf2, 2, MatrixShape.UPPER_TRIANGULAR)),
        ("mat:gf:2:1:2", matrix_ring(gf2, 2, MatrixShape.FULL)),
        ("prod:z:2,z:2", direct_product(z_mod(2), z_mod(2))),
        ("prod:z:2,z:3", direct_product(z_mod(2), z_mod(3))),
        ("prod:z:4,gf:2:2", direct_product(z_mod(4), galois_field(2, 2))),
        ("null:2", null_ring(2)),
        ("null:4", null_ring(4)),
        ("2Z_4", induced_subring(z_mod(4), [0, 2], descriptor="2Z_4")),
    ]
    return corpus


def worked_semidirect_data() -> Dict[str, SemidirectData]:
    """Data for Z[1/2] x Z_2, Z[1/2] ⋉ Z_3 with negation, and Z ⋉ T_2(GF(2))"""
    t2 = matrix_ring(galois_field(2, 1), 2, MatrixShape.UPPER_TRIANGULAR)
    return {
        "direct_product": SemidirectData(m=2, ideal=z_mod(2), e=1, L=[0, 0], Rm=[0, 0]),
        "negation": SemidirectData(m=2, ideal=null_ring(3), e=0, L=[0, 2, 1], Rm=[0, 2, 1]),
        "upper_triangular": SemidirectData(m=1, ideal=t2, e=0, L=np.arange(8), Rm=np.arange(8)),
    }


def random_semidirect_data(rng: np.random.Generator) -> SemidirectData:
    """
    Valid data with |I| <= 9 from three families: zero action with e = 1_I;
    e = 0 with L = Rm = multiplication by an inverse of m; I = A x B with
    e = (1_A, 0) and L(a, b) = (0, c·b).
    """
    family = int(rng.integers(3))
    if family == 0:
        ideal = [z_mod(2), z_mod(3), z_mod(5), z_mod(6), z_mod(9), galois_field(2, 2),
                 galois_field(2, 3), direct_product(z_mod(2), z_mod(2))][int(rng.integers(8))]
        m = int(rng.choice([1, 2, 3, 4, 6, 10, 12, 30]))
        zeros = np.full(ideal.order, ideal.zero)
        data = SemidirectData(m=m, ideal=ideal, e=ideal.identity, L=zeros, Rm=zeros)
    elif family == 1:
        ideal = [z_mod(3), z_mod(5), z_mod(7), z_mod(9), null_ring(3), null_ring(5),
                 null_ring(9), z_mod(4), null_ring(8)][int(rng.integers(9))]
        char = ideal.characteristic
        m = int(rng.choice([k for k in (1, 2, 3, 5, 6, 7, 10, 15) if gcd(k, char) == 1]))
        c = pow(m, -1, char) if char > 1 else 0
        image = ideal.scalar(c, ideal.elements())
        data = SemidirectData(m=m, ideal=ideal, e=ideal.zero, L=image, Rm=image)
    else:
        a_ring = [z_mod(2), z_mod(3)][int(rng.integers(2))]
        b_choices = [z_mod(2), z_mod(3), null_ring(2), null_ring(3)]
        if a_ring.order == 2:
            b_choices.append(z_mod(4))
        b_ring = b_choices[int(rng.integers(len(b_choices)))]
        ideal = direct_product(a_ring, b_ring)
        char = b_ring.characteristic
        m = int(rng.choice([k for k in (1, 5, 7, 11, 35) if gcd(k, char) == 1]))
        c = pow(m, -1, char)
        ids = ideal.elements()
        image = b_ring.scalar(c, ids % b_ring.order)
        e = a_ring.identity * b_ring.order + b_ring.zero
        data = SemidirectData(m=m, ideal=ideal, e=e, L=image, Rm=image)
    validate_semidirect_data(data)
    return data


def integral_instance(ring: Ring, a: int, rng: np.random.Generator, tries: int = 200) -> IntPolynomial:
    """A content-1, non-monic q with q(a) = 0: random search first, then x^u - x^v based"""
    m = ring.characteristic
    for _ in range(tries):
        degree = int(rng.integers(1, 4))
        coeffs = [int(c) for c in rng.integers(0, max(m, 2), size=degree + 1)]
        q = IntPolynomial(coeffs)
        if q.is_zero or q.is_monic or content(q) != 1:
            continue
        if int(ring.evaluate(q, a)) == ring.zero:
            return q

    powers: Dict[int, int] = {}
    current, k = a, 1
    while current not in powers:
        powers[current] = k
        current, k = int(ring.mul(current, a)), k + 1
    u, v = k, powers[current]
    cycle = IntPolynomial.monomial(1, u) - IntPolynomial.monomial(1, v)
    unit = int(rng.choice([k for k in range(1, max(m, 2) + 1) if gcd(k, m) == 1]))
    return cycle.scale(unit) + IntPolynomial.monomial(m, u + 1)


# ===================== SUITE PLUMBING =====================
class SuiteRunner:
    def __init__(self):
        self.items: List[VerificationItem] = []

    def run(self, name: str, criterion: str, check: Callable[[], Tuple[bool, str, List]],
            budget: Optional[float] = None):
        """Run one check; with a budget, an item slower than budget seconds fails"""
        start = time.perf_counter()
        try:
            passed, detail, unresolved = check()
        except RingLabError as e:
            logger.error(f"{name}: {e}")
            passed, detail, unresolved = False, f"error: {e}", []
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            logger.warning(f"{name}: {elapsed:.2f}s over the {budget}s budget")
            passed = False
            detail = f"{detail}; over time budget ({elapsed:.2f}s > {budget}s)"
        self.items.append(VerificationItem(
            name=name, criterion=criterion, passed=passed and not unresolved,
            detail=detail, elapsed_seconds=round(elapsed, 4), unresolved=unresolved,
        ))
        logger.info(f"{name}: {'pass' if passed and not unresolved else 'FAIL'} ({elapsed:.2f}s)")


def _field_check(p: int, n: int):
    def check():
        field = galois_field(p, n)
        d = divisor_count(n)
        unital = isomorphic(compressed_commuting_graph(field, Mode.UNITAL), complete_with_loops(d))
        plain = isomorphic(compressed_commuting_graph(field, Mode.NONUNITAL), complete_with_loops(d + 1))
        return unital.found and plain.found, f"d({n})={d}", []
    return check


def _matrix_check():
    gf2 = galois_field(2, 1)
    full = compressed_commuting_graph(matrix_ring(gf2, 2, MatrixShape.FULL))
    tri = compressed_commuting_graph(matrix_ring(gf2, 2, MatrixShape.UPPER_TRIANGULAR))
    expected = join(complete_with_loops(2), disjoint_union(3, complete_with_loops(2)))
    ok = full.vertex_count == 15 and tri.vertex_count == 8 and isomorphic(tri, expected).found
    return ok, f"|V(M2)|={full.vertex_count}, |V(T2)|={tri.vertex_count}", []


def _localization_check(m: int, rng: np.random.Generator):
    def check():
        graph = lambda1_localized(m)
        s = PrimeSupport.of(m).s
        ok = graph.vertex_count == 2 ** s and isomorphic(graph, complete_with_loops(2 ** s)).found
        for _ in range(5):
            den = int(np.prod([p ** int(rng.integers(0, 3)) for p in PrimeSupport.of(m).primes] or [1]))
            num = int(rng.integers(-40, 41))
            if gcd(num, den) != 1:
                num = 1
            a = LocalizedRational(m, num, den)
            rep = class_representative(a)
            ok &= constructive_witness(a, rep) is not None and constructive_witness(rep, a) is not None
        return ok, f"s={s}, vertices={graph.vertex_count}", []
    return check


def _prop_iso_check(corpus):
    def check():
        failures = [name for name, ring in corpus if not check_prop_iso(ring).holds]
        return not failures, f"{len(corpus)} rings, failures: {failures}", []
    return check


def _semidirect_check(name: str, data: SemidirectData, expected: Callable[[], CompressedGraph]):
    def check():
        report = lambda1_semidirect(localized_semidirect(data))
        ok = isomorphic(report.graph, expected()).found
        return ok, f"{name}: {report.graph.vertex_count} vertices, {len(report.merges)} merges", report.unresolved
    return check


def _bound_check(seed: int):
    def check():
        rng = np.random.default_rng(seed)
        unresolved: List = []
        violations = 0
        for _ in range(50):
            report = lambda1_semidirect(localized_semidirect(random_semidirect_data(rng)), RANDOM_MERGE_BOUNDS)
            violations += not report.within_bound
            unresolved += report.unresolved
        tight = lambda1_semidirect(localized_semidirect(worked_semidirect_data()["upper_triangular"]))
        ok = violations == 0 and tight.graph.vertex_count == tight.bound == 8
        return ok, f"violations={violations}, tight={tight.graph.vertex_count}/{tight.bound}", unresolved
    return check


def _integral_check(corpus, seed: int):
    def check():
        rng = np.random.default_rng(seed)
        unital = [ring for _, ring in corpus if ring.identity is not None]
        failures = 0
        worked = [(z_mod(4), 2, IntPolynomial((0, 2, 1))), (z_mod(6), 3, IntPolynomial((0, 3, 1)))]
        instances = list(worked)
        while len(instances) < 100 + len(worked):
            ring = unital[int(rng.integers(len(unital)))]
            a = int(rng.integers(ring.order))
            instances.append((ring, a, integral_instance(ring, a, rng)))
        for ring, a, q in instances:
            s = monic_annihilator(ring, a, q)
            failures += not (s.is_monic and int(ring.evaluate(s, a)) == ring.zero)
        return failures == 0, f"{len(instances)} instances, failures={failures}", []
    return check


def _lattice_check(corpus):
    def check():
        bad = []
        for name, ring in corpus:
            if ring.identity is None:
                continue
            lattice = unital_subring_lattice(ring)
            vertices = len(compress_classes(ring, Mode.UNITAL).classes)
            if not lattice.complete or len(lattice.subrings) > 2 ** vertices:
                bad.append(name)
        return not bad, f"violations: {bad}", []
    return check


def _well_definedness_check(corpus):
    def check():
        bad = []
        for name, ring in corpus:
            modes = [Mode.NONUNITAL] + ([Mode.UNITAL] if ring.identity is not None else [])
            for mode in modes:
                if edge_well_definedness_witness(compress_classes(ring, mode)) is not None:
                    bad.append(f"{name}/{mode.value}")
        return not bad, f"violations: {bad}", []
    return check


def _loops_check(corpus):
    def check():
        bad = [name for name, ring in corpus if not compressed_commuting_graph(ring).all_looped()]
        return not bad, f"violations: {bad}", []
    return check


def _relabel_check(seed: int):
    def check():
        rng = np.random.default_rng(seed)
        graph = compressed_commuting_graph(matrix_ring(galois_field(2, 1), 2, MatrixShape.FULL))
        failures = 0
        for _ in range(100):
            shuffled = relabel(graph, rng.permutation(graph.vertex_count))
            failures += not (isomorphic(graph, shuffled).found and isomorphic(shuffled, graph).found)
        return failures == 0, f"100 shuffles, failures={failures}", []
    return check


def _round_trip_check(corpus):
    def check():
        bad = []
        for name, ring in corpus:
            graph = compressed_commuting_graph(ring)
            text = emit(graph, OutputFormat.JSON)
            if parse_json(text) != graph or emit(parse_json(text), OutputFormat.JSON) != text:
                bad.append(name)
        return not bad, f"violations: {bad}", []
    return check


# ===================== ENTRY POINT =====================
def run_suite(suite: Suite = Suite.PAPER, seed: int = None) -> VerificationReport:
    seed = get_settings().seed if seed is None else seed
    rng = np.random.default_rng(seed)
    corpus = ring_corpus()
    runner = SuiteRunner()
    settings = get_settings()

    if suite == Suite.PAPER:
        for p, n in FIELD_CASES:
            runner.run(f"finite_field_gf{p}^{n}", "1", _field_check(p, n), settings.instance_seconds)
        runner.run("matrix_examples", "2", _matrix_check, settings.instance_seconds)
        for m in LOCALIZATION_MODULI:
            runner.run(f"localization_m{m}", "3", _localization_check(m, rng))
        runner.run("unitalization_isomorphism", "4", _prop_iso_check(corpus), settings.corpus_seconds)
        expected = {
            "direct_product": lambda: complete_with_loops(3),
            "negation": lambda: complete_with_loops(4),
            "upper_triangular": lambda: compressed_commuting_graph(
                matrix_ring(galois_field(2, 1), 2, MatrixShape.UPPER_TRIANGULAR)),
        }
        for name, data in worked_semidirect_data().items():
            runner.run(f"semidirect_{name}", "5", _semidirect_check(name, data, expected[name]))
        runner.run("semidirect_bound", "6", _bound_check(seed))
        runner.run("monic_annihilators", "7", _integral_check(corpus, seed))
        runner.run("unital_subring_lattice", "8", _lattice_check(corpus))
    else:
        runner.run("edge_well_definedness", "9", _well_definedness_check(corpus))
        runner.run("loops_on_every_vertex", "9", _loops_check(corpus))
        runner.run("isomorphism_relabeling", "9", _relabel_check(seed))
        runner.run("emit_parse_round_trip", "9", _round_trip_check(corpus))

    unresolved = sum(len(item.unresolved) for item in runner.items)
    report = VerificationReport(
        suite=suite,
        seed=seed,
        items=runner.items,
        passed=all(item.passed for item in runner.items),
        unresolved_count=unresolved,
    )
    logger.info(f"{suite.value} suite: {sum(i.passed for i in runner.items)}/{len(runner.items)} passed, "
                f"{unresolved} unresolved")
    return report
