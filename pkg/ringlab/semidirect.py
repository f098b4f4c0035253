# ringlab/semidirect.py
"""
Unitalization, semidirect products Z ⋉ I and the unital compressed commuting
graph of Z[1/m] ⋉ I.

The product on Z × I is (z1, x1)(z2, x2) = (z1 z2, z1·x2 + x1·z2 + x1 x2). It
has the identity (1, e) exactly when e is idempotent and 1 acts as
1·x = x - e x, x·1 = x - x e.

For Z[1/m] the action is stored by its value on the generator 1/m (maps L and
Rm on I) and (a/m^k)·x = a·L^k(x).

Background only, without a runtime counterpart: an abstract unital ring of
this shape splits with the idempotent e0 = (m r)^k, the element
s = r (m r)^(2k-1) and a section h of the projection onto Z[1/m]. Here the
product is always given explicitly by SemidirectData.
"""
from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from networkx.utils import UnionFind

from ringlab.config import get_settings
from ringlab.errors import (
    ActionValidationError, BudgetExceededError, PreconditionError, SemidirectDataError, SpecParseError
)
from ringlab.finite_ring import Ring, first_witness, materialize
from ringlab.graph_kit import CompressedGraph
from ringlab.localized import (
    LocalizedRational, MembershipWitness, PrimeSupport, class_representative,
    constructive_witness, representative_witness
)
from ringlab.models import Mode, SemidirectDataFile, WitnessBounds, WitnessStatus
from ringlab.polynomials import IntPolynomial
from ringlab.subring_compress import compress_classes, graph_from_partition

logger = logging.getLogger(__name__)

Failures = List[Tuple[str, Tuple[int, ...]]]


class _FailureLog:
    """Collects the first witness of each violated condition"""

    def __init__(self):
        self.failures: Failures = []
        self._names = set()

    def check(self, name: str, mask, columns: Sequence):
        if name in self._names:
            return
        mask = np.atleast_1d(np.asarray(mask))
        witness = first_witness(mask, [np.atleast_1d(np.asarray(c)) for c in columns])
        if witness is not None:
            self._names.add(name)
            self.failures.append((name, tuple(witness)))


# ===================== UNITALIZATION =====================
def unitalization(R: Ring) -> Ring:
    """
    R^1 on Z_m × R, m = char R, with (k, a)(n, b) = (kn, n a + k b + a b).
    Element (k, r) has id k·|R| + r, so i(r) = (0, r) keeps the id of r.
    """
    m = R.characteristic
    if m < 1:
        raise PreconditionError(f"{R.descriptor} has no finite characteristic")
    n = R.order

    def add_rule(a, b):
        (ka, ra), (kb, rb) = np.divmod(a, n), np.divmod(b, n)
        return ((ka + kb) % m) * n + R.add(ra, rb)

    def neg_rule(a):
        k, r = np.divmod(a, n)
        return ((-k) % m) * n + R.neg(r)

    def mul_rule(a, b):
        (ka, ra), (kb, rb) = np.divmod(a, n), np.divmod(b, n)
        x = R.add(R.add(R.scale(kb, ra), R.scale(ka, rb)), R.mul(ra, rb))
        return ((ka * kb) % m) * n + x

    return materialize(
        m * n, add_rule, neg_rule, mul_rule,
        zero=R.zero, identity=(1 % m) * n + R.zero,
        descriptor=f"{R.descriptor}^1 [i(r)=(0,r)]",
    )


@dataclass
class PropIsoResult:
    holds: bool
    bijection: Dict[int, int]


def check_prop_iso(R: Ring) -> PropIsoResult:
    """Is [a] -> [(0, a)] an isomorphism Lambda(R) -> Lambda^1(R^1)?"""
    unital = unitalization(R)
    left = compress_classes(R, Mode.NONUNITAL)
    right = compress_classes(unital, Mode.UNITAL)
    right_class = right.class_of()

    bijection: Dict[int, int] = {}
    well_defined = True
    for i, cls in enumerate(left.classes):
        images = set(right_class[list(cls.members)].tolist())
        well_defined &= len(images) == 1
        bijection[i] = min(images)

    onto = sorted(bijection.values()) == list(range(len(right.classes)))
    g, h = graph_from_partition(left), graph_from_partition(right)
    adjacency = onto and all(
        g.has_edge(i, j) == h.has_edge(bijection[i], bijection[j])
        for i in range(g.vertex_count) for j in range(i, g.vertex_count)
    )
    holds = bool(well_defined and onto and adjacency)
    if not holds:
        logger.error(f"{R.descriptor}: [a] -> [(0,a)] is not an isomorphism")
    return PropIsoResult(holds=holds, bijection=bijection)


# ===================== FINITE SEMIDIRECT PRODUCTS =====================
@dataclass
class ActionTables:
    left: np.ndarray  # left[z, x] = z·x
    right: np.ndarray  # right[x, z] = x·z


def natural_action(Z: Ring, I: Ring) -> ActionTables:
    """n·x for Z = Z_m acting on I (char I must divide m)"""
    if Z.identity is None:
        raise PreconditionError(f"{Z.descriptor} has no identity")
    multiples = np.asarray(Z.scale(np.arange(Z.order), Z.identity))
    if sorted(multiples.tolist()) != list(range(Z.order)):
        raise PreconditionError(f"{Z.descriptor} is not additively generated by its identity")
    if Z.order % I.characteristic:
        raise PreconditionError(f"char {I.descriptor} = {I.characteristic} does not divide {Z.order}")
    integer_of = np.empty(Z.order, dtype=np.int64)
    integer_of[multiples] = np.arange(Z.order)
    left = I.scale(integer_of[:, None], I.elements()[None, :])
    return ActionTables(left=left, right=left.T.copy())


def validate_action(Z: Ring, I: Ring, act: ActionTables) -> None:
    """Raise ActionValidationError unless act is a two-sided Z-ring action on I"""
    L, Rt = np.asarray(act.left), np.asarray(act.right)
    if L.shape != (Z.order, I.order) or Rt.shape != (I.order, Z.order):
        raise ActionValidationError("Action tables have the wrong shape", [])
    if L.min(initial=0) < 0 or L.max(initial=0) >= I.order or Rt.min(initial=0) < 0 \
            or Rt.max(initial=0) >= I.order:
        raise ActionValidationError("Action tables leave the carrier of I", [])

    log = _FailureLog()
    zs, xs = Z.elements(), I.elements()
    z1, z2, x = zs[:, None, None], zs[None, :, None], xs[None, None, :]
    log.check("left_additive_in_z", L[Z.add(z1, z2), x] == I.add(L[z1, x], L[z2, x]), [z1, z2, x])
    log.check("right_additive_in_z", Rt[x, Z.add(z1, z2)] == I.add(Rt[x, z1], Rt[x, z2]), [z1, z2, x])
    log.check("left_associative", L[Z.mul(z1, z2), x] == L[z1, L[z2, x]], [z1, z2, x])
    log.check("right_associative", Rt[x, Z.mul(z1, z2)] == Rt[Rt[x, z1], z2], [z1, z2, x])
    log.check("bimodule", Rt[L[z1, x], z2] == L[z1, Rt[x, z2]], [z1, z2, x])

    z, x1, x2 = zs[:, None, None], xs[None, :, None], xs[None, None, :]
    log.check("left_additive_in_x", L[z, I.add(x1, x2)] == I.add(L[z, x1], L[z, x2]), [z, x1, x2])
    log.check("right_additive_in_x", Rt[I.add(x1, x2), z] == I.add(Rt[x1, z], Rt[x2, z]), [z, x1, x2])
    log.check("left_product", L[z, I.mul(x1, x2)] == I.mul(L[z, x1], x2), [z, x1, x2])
    log.check("middle_product", I.mul(x1, L[z, x2]) == I.mul(Rt[x1, z], x2), [z, x1, x2])
    log.check("right_product", Rt[I.mul(x1, x2), z] == I.mul(x1, Rt[x2, z]), [z, x1, x2])

    if log.failures:
        logger.error(f"Invalid action of {Z.descriptor} on {I.descriptor}: {log.failures}")
        raise ActionValidationError("Invalid action", log.failures)


def semidirect_finite(Z: Ring, I: Ring, act: ActionTables) -> Ring:
    """Z ⋉ I on ids z·|I| + x; the identity (1, e) is found by exhaustive search"""
    validate_action(Z, I, act)
    L, Rt = np.asarray(act.left), np.asarray(act.right)
    n = I.order

    def add_rule(a, b):
        (za, xa), (zb, xb) = np.divmod(a, n), np.divmod(b, n)
        return np.asarray(Z.add(za, zb)) * n + I.add(xa, xb)

    def neg_rule(a):
        z, x = np.divmod(a, n)
        return np.asarray(Z.neg(z)) * n + I.neg(x)

    def mul_rule(a, b):
        (za, xa), (zb, xb) = np.divmod(a, n), np.divmod(b, n)
        x = I.add(I.add(L[za, xb], Rt[xa, zb]), I.mul(xa, xb))
        return np.asarray(Z.mul(za, zb)) * n + x

    identity = None
    if Z.identity is not None:
        e = unital_idempotent(I, L[Z.identity], Rt[:, Z.identity])
        if e is not None:
            identity = Z.identity * n + e
    product = materialize(Z.order * n, add_rule, neg_rule, mul_rule,
                          zero=Z.zero * n + I.zero, identity=identity,
                          descriptor=f"{Z.descriptor} ⋉ {I.descriptor}")
    logger.info(f"{product.descriptor}: order {product.order}, "
                f"{'unital' if identity is not None else 'non-unital'}")
    return product


def unital_idempotent(I: Ring, one_left: np.ndarray, one_right: np.ndarray) -> Optional[int]:
    """Least idempotent e with 1·x = x - e x and x·1 = x - x e for every x"""
    xs = I.elements()
    es = xs[:, None]
    ok = (
        (I.mul(xs, xs) == xs)
        & np.all(one_left[None, :] == I.sub(xs[None, :], I.mul(es, xs[None, :])), axis=1)
        & np.all(one_right[None, :] == I.sub(xs[None, :], I.mul(xs[None, :], es)), axis=1)
    )
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None


# ===================== Z[1/m] ⋉ I =====================
@dataclass
class SemidirectData:
    m: int
    ideal: Ring
    e: int
    L: np.ndarray
    Rm: np.ndarray

    def __post_init__(self):
        self.L = np.asarray(self.L, dtype=np.int64)
        self.Rm = np.asarray(self.Rm, dtype=np.int64)


def validate_semidirect_data(data: SemidirectData) -> None:
    """Raise SemidirectDataError listing every violated condition with a witness"""
    I, m, e = data.ideal, data.m, data.e
    n = I.order
    if m < 1:
        raise SemidirectDataError(f"m must be >= 1, got {m}", [])
    if not 0 <= e < n:
        raise SemidirectDataError(f"e={e} outside {I.descriptor}", [])
    for name, table in (("L", data.L), ("Rm", data.Rm)):
        if table.shape != (n,) or table.min() < 0 or table.max() >= n:
            raise SemidirectDataError(f"{name} must list {n} element ids of {I.descriptor}", [])

    L, Rm = data.L, data.Rm
    log = _FailureLog()
    x = I.elements()
    x1, x2 = x[:, None], x[None, :]
    zero = I.zero

    log.check("idempotent", I.mul(e, e) == e, [e])
    log.check("L_additive", L[I.add(x1, x2)] == I.add(L[x1], L[x2]), [x1, x2])
    log.check("Rm_additive", Rm[I.add(x1, x2)] == I.add(Rm[x1], Rm[x2]), [x1, x2])
    log.check("left_unit", I.scalar(m, L[x]) == I.sub(x, I.mul(e, x)), [x])
    log.check("right_unit", I.scalar(m, Rm[x]) == I.sub(x, I.mul(x, e)), [x])
    log.check("e_times_L", I.mul(e, L[x]) == zero, [x])
    log.check("L_of_e_times", L[I.mul(e, x)] == zero, [x])
    log.check("Rm_times_e", I.mul(Rm[x], e) == zero, [x])
    log.check("Rm_of_times_e", Rm[I.mul(x, e)] == zero, [x])
    log.check("L_product", L[I.mul(x1, x2)] == I.mul(L[x1], x2), [x1, x2])
    log.check("Rm_product", Rm[I.mul(x1, x2)] == I.mul(x1, Rm[x2]), [x1, x2])
    log.check("middle_product", I.mul(x1, L[x2]) == I.mul(Rm[x1], x2), [x1, x2])
    log.check("L_Rm_commute", L[Rm[x]] == Rm[L[x]], [x])

    if log.failures:
        logger.error(f"Invalid semidirect data over {I.descriptor}: {log.failures}")
        raise SemidirectDataError("Invalid semidirect data", log.failures)


def semidirect_data_from_file(document: SemidirectDataFile) -> SemidirectData:
    from ringlab.ring_spec import parse_ring_spec
    return SemidirectData(m=document.m, ideal=parse_ring_spec(document.ideal),
                          e=document.e, L=document.L, Rm=document.Rm)


def load_semidirect_data(path: str) -> SemidirectData:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = SemidirectDataFile.model_validate(json.load(fh))
    except FileNotFoundError as e:
        raise SpecParseError(f"Semidirect data file not found: {path}") from e
    except ValueError as e:
        raise SpecParseError(f"Invalid semidirect data file {path}: {e}") from e
    return semidirect_data_from_file(document)


@dataclass(frozen=True)
class SDElement:
    z: LocalizedRational
    x: int

    def label(self) -> str:
        return f"({self.z}, {self.x})"


class LocalizedSemidirect:
    """Exact arithmetic in Z[1/m] ⋉ I for validated data"""

    def __init__(self, data: SemidirectData):
        validate_semidirect_data(data)
        self.data = data
        self.m = data.m
        self.ideal = data.ideal
        self.identity = SDElement(LocalizedRational(self.m, 1), int(data.e))
        self._map_powers: Dict[Tuple[str, int], np.ndarray] = {}

    def element(self, z: Union[int, Fraction, LocalizedRational], x: int) -> SDElement:
        if not isinstance(z, LocalizedRational):
            z = LocalizedRational.of(self.m, z)
        if not 0 <= int(x) < self.ideal.order:
            raise PreconditionError(f"{x} is not an element of {self.ideal.descriptor}")
        return SDElement(z, int(x))

    # ----- action -----
    def _exponent(self, z: LocalizedRational) -> Tuple[int, int]:
        """(k, a) with z = a/m^k and k >= 1 minimal"""
        k, power = 1, self.m
        while power % z.den:
            k += 1
            power *= self.m
        return k, z.num * power // z.den

    def _map_power(self, name: str, k: int) -> np.ndarray:
        key = (name, k)
        if key not in self._map_powers:
            table = self.data.L if name == "L" else self.data.Rm
            result = np.arange(self.ideal.order)
            base = table
            while k:
                if k & 1:
                    result = base[result]
                base = base[base]
                k >>= 1
            self._map_powers[key] = result
        return self._map_powers[key]

    def act_left(self, z: LocalizedRational, x):
        k, a = self._exponent(z)
        return self.ideal.scalar(a, self._map_power("L", k)[x])

    def act_right(self, x, z: LocalizedRational):
        k, a = self._exponent(z)
        return self.ideal.scalar(a, self._map_power("Rm", k)[x])

    # ----- ring operations -----
    def add(self, u: SDElement, v: SDElement) -> SDElement:
        return SDElement(u.z + v.z, int(self.ideal.add(u.x, v.x)))

    def neg(self, u: SDElement) -> SDElement:
        return SDElement(-u.z, int(self.ideal.neg(u.x)))

    def sub(self, u: SDElement, v: SDElement) -> SDElement:
        return self.add(u, self.neg(v))

    def mul(self, u: SDElement, v: SDElement) -> SDElement:
        I = self.ideal
        x = I.add(I.add(self.act_left(u.z, v.x), self.act_right(u.x, v.z)), I.mul(u.x, v.x))
        return SDElement(u.z * v.z, int(x))

    def scalar(self, c: int, u: SDElement) -> SDElement:
        return SDElement(LocalizedRational.of(self.m, c * u.z.value), int(self.ideal.scalar(c, u.x)))

    def evaluate(self, q: IntPolynomial, w: SDElement) -> SDElement:
        """q(w) with the constant term times the identity (1, e)"""
        result = self.scalar(q.constant_term, self.identity)
        power = w
        for c in q.coefficients[1:]:
            if c:
                result = self.add(result, self.scalar(c, power))
            power = self.mul(power, w)
        return result


def localized_semidirect(data: SemidirectData) -> LocalizedSemidirect:
    handle = LocalizedSemidirect(data)
    logger.info(f"Z[1/{data.m}] ⋉ {data.ideal.descriptor}: identity {handle.identity.label()}")
    return handle


def sd_power(h: LocalizedSemidirect, elem: SDElement, k: int) -> SDElement:
    """elem^k by (a, r)^(j+1) = (a, r)^j (a, r)"""
    if k < 1:
        raise PreconditionError(f"Power must be >= 1, got {k}")
    result = elem
    for _ in range(k - 1):
        result = h.mul(result, elem)
    return result


@dataclass(frozen=True)
class PowerCycle:
    u: int
    v: int
    polynomial: IntPolynomial  # x^u - x^v


def stabilize_power_functions(h: LocalizedSemidirect, a: LocalizedRational) -> PowerCycle:
    """
    Least v < u with f_u = f_v, where f_k(r) is the I-part of (a, r)^k. Then
    (a, r)^u - (a, r)^v = (a^u - a^v, 0) for every r.
    """
    I = h.ideal
    limit = get_settings().power_cycle_limit
    rs = I.elements()
    f = rs.copy()
    a_power = a
    seen: Dict[bytes, int] = {f.tobytes(): 1}
    k = 1
    while True:
        f = np.asarray(I.add(I.add(h.act_left(a_power, rs), h.act_right(f, a)), I.mul(f, rs)))
        a_power = a_power * a
        k += 1
        key = f.tobytes()
        if key in seen:
            v = seen[key]
            polynomial = IntPolynomial.monomial(1, k) - IntPolynomial.monomial(1, v)
            return PowerCycle(u=k, v=v, polynomial=polynomial)
        seen[key] = k
        if k > limit:
            raise BudgetExceededError(f"Power functions of {a} did not cycle within {limit} steps")


def _resolve_bounds(bounds: Optional[WitnessBounds]) -> WitnessBounds:
    if bounds is not None:
        return bounds
    settings = get_settings()
    return WitnessBounds(degree=settings.merge_degree, coefficient=settings.merge_coefficient)


def _extend_span(I: Ring, span: Dict[int, Tuple[int, ...]], y: int) -> Dict[int, Tuple[int, ...]]:
    """Span plus the multiples of y, each element tagged with its coefficients"""
    padded = {x: c + (0,) for x, c in span.items()}
    out = dict(padded)
    k, t = 1, y
    while t not in out:
        for x, c in padded.items():
            out[int(I.add(x, t))] = c[:-1] + (k,)
        k += 1
        t = int(I.add(t, y))
    return out


def _additive_order(I: Ring, y: int) -> int:
    k, t = 1, y
    while t != I.zero:
        t = int(I.add(t, y))
        k += 1
    return k


def _balance(q: IntPolynomial, a: LocalizedRational) -> IntPolynomial:
    """Subtract t x^(k-1)(D x - n) from the top down; afterwards |c_k| <= D/2 for k >= 1"""
    coeffs = list(q.coefficients)
    for k in range(len(coeffs) - 1, 0, -1):
        t = (coeffs[k] + a.den // 2) // a.den
        coeffs[k] -= t * a.den
        coeffs[k - 1] += t * a.num
    return IntPolynomial(coeffs)


def _verify(h: LocalizedSemidirect, q: IntPolynomial, source: SDElement, target: SDElement):
    if h.evaluate(q, source) != target:
        logger.error(f"Witness {q} does not send {source.label()} to {target.label()}")
        raise PreconditionError("Membership witness failed verification")


def _search_witness(h: LocalizedSemidirect, source: SDElement, target: SDElement,
                    bounds: WitnessBounds) -> Optional[IntPolynomial]:
    """
    Bounded search over Z[x], stopped at the search limit. c0 is solved from
    the Z[1/m] part; the I-part of q(source) is sum q_i x_i with x_i the I-part
    of source^i, checked for a whole degree of candidates at once.
    """
    I = h.ideal
    a, b = source.z.value, target.z.value
    coefficient = bounds.coefficient
    char = I.characteristic

    parts = [h.identity.x]
    power = source
    for _ in range(bounds.degree):
        parts.append(power.x)
        power = h.mul(power, source)

    if b.denominator == 1 and abs(b.numerator) <= coefficient:
        if int(I.scalar(b.numerator, parts[0])) == target.x:
            return IntPolynomial.constant(b.numerator)

    limit = get_settings().witness_search_limit
    values = sorted(range(-coefficient, coefficient + 1), key=lambda c: (abs(c), c < 0))
    n, D = a.numerator, a.denominator
    tried = 0
    for degree in range(1, bounds.degree + 1):
        room = limit - tried
        if room <= 0:
            return None
        candidates = (t for t in itertools.product(values, repeat=degree) if t[-1] != 0)
        tails = np.array(list(itertools.islice(candidates, room)), dtype=np.int64).reshape(-1, degree)
        tried += len(tails)

        weights = [n ** i * D ** (degree - i) for i in range(1, degree + 1)]
        scale = b.denominator * D ** degree
        largest = coefficient * sum(abs(w) for w in weights) * b.denominator + abs(b.numerator) * D ** degree
        exact = tails if max(largest, scale) < 2 ** 62 else tails.astype(object)
        top = b.numerator * D ** degree - b.denominator * (exact @ np.array(weights, dtype=exact.dtype))
        quotient = top // scale
        ok = np.asarray((top % scale == 0) & (abs(quotient) <= coefficient), dtype=bool)
        c0 = np.where(ok, quotient, 0).astype(np.int64)

        part = np.asarray(I.scale(np.mod(c0, char), parts[0]))
        for i in range(1, degree + 1):
            part = np.asarray(I.add(part, I.scale(np.mod(tails[:, i - 1], char), parts[i])))
        ok &= part == target.x

        hits = np.flatnonzero(ok)
        if hits.size:
            spread = np.maximum(np.abs(c0[hits]), np.abs(tails[hits]).max(axis=1))
            best = int(hits[np.argmin(spread)])
            return IntPolynomial((int(c0[best]),) + tuple(int(c) for c in tails[best]))
    return None


def sd_membership(
    h: LocalizedSemidirect,
    source: SDElement,
    target: SDElement,
    bounds: Optional[WitnessBounds] = None,
) -> MembershipWitness:
    """
    Decide whether target lies in <source>_1.

    With source = (n/D, r) and P(n/D) = b for some P, every q with q(n/D) = b
    is P + (D x - n) g. The I-parts reachable that way form the coset of the
    additive span of y_j, where y_0 = D r - n e and y_(j+1) is the I-part of
    (0, y_j)(n/D, r). The exact witness is tried first, then a reduced one,
    then a bounded search. The result is FOUND (within bounds), UNRESOLVED (a
    witness exists but none turned up within the bounds) or EXCLUDED.
    """
    bounds = _resolve_bounds(bounds)
    I = h.ideal
    a, r = source.z, source.x
    first = constructive_witness(a, target.z)
    if first is None:
        return MembershipWitness(WitnessStatus.EXCLUDED)

    y = int(I.sub(I.scalar(a.den, r), I.scalar(a.num, h.data.e)))
    ys: List[int] = []
    span: Dict[int, Tuple[int, ...]] = {int(I.zero): ()}
    while y not in span:
        span = _extend_span(I, span, y)
        ys.append(y)
        y = int(I.add(h.act_right(y, a), I.mul(y, r)))
    orders = [_additive_order(I, y) for y in ys]
    linear = IntPolynomial((-a.num, a.den))

    def lift(p: IntPolynomial, symmetric: bool) -> Optional[IntPolynomial]:
        """p corrected by (D x - n) g so that its I-part hits target.x"""
        gap = int(I.sub(target.x, h.evaluate(p, source).x))
        if gap not in span:
            return None
        g = list(span[gap])
        if symmetric:
            g = [c - k if c > k // 2 else c for c, k in zip(g, orders)]
        q = p + linear * IntPolynomial(g)
        _verify(h, q, source, target)
        return q

    witness = lift(first, symmetric=False)
    if witness is None:
        return MembershipWitness(WitnessStatus.EXCLUDED)
    if witness.fits(bounds.degree, bounds.coefficient):
        return MembershipWitness(WitnessStatus.FOUND, witness)

    reduced = lift(_balance(first, a), symmetric=True)
    if reduced.fits(bounds.degree, bounds.coefficient):
        return MembershipWitness(WitnessStatus.FOUND, reduced)

    found = _search_witness(h, source, target, bounds)
    if found is not None:
        _verify(h, found, source, target)
        return MembershipWitness(WitnessStatus.FOUND, found)
    logger.debug(f"No witness {source.label()} -> {target.label()} within degree {bounds.degree}, "
                 f"coefficients {bounds.coefficient}")
    smallest = min(witness, reduced, key=lambda q: (q.max_abs_coefficient(), len(q.coefficients)))
    return MembershipWitness(WitnessStatus.UNRESOLVED, smallest)


@dataclass
class CanonicalForm:
    element: SDElement
    status: WitnessStatus
    forward: MembershipWitness
    backward: MembershipWitness
    cycle: PowerCycle


def canonicalize(h: LocalizedSemidirect, elem: SDElement,
                 bounds: Optional[WitnessBounds] = None) -> CanonicalForm:
    """
    (a, r) -> (b, r + g1·e) with b = class_representative(a). H = x^u - x^v
    sends (a, r) to (H(a), 0); G1 carries H(a) to a, P1 carries a to b, and g1
    is the constant term of (P1 - x)∘G1.
    """
    a = elem.z
    cycle = stabilize_power_functions(h, a)
    collapsed = LocalizedRational.of(h.m, cycle.polynomial.evaluate_at(a.value))
    to_a = constructive_witness(collapsed, a)
    if to_a is None:
        logger.error(f"No polynomial carries {collapsed} to {a}")
        raise PreconditionError(f"Cannot canonicalize {elem.label()}")
    shift = (representative_witness(a) - IntPolynomial.x()).compose(to_a).constant_term

    I = h.ideal
    result = SDElement(class_representative(a), int(I.add(elem.x, I.scalar(shift, h.data.e))))
    forward = sd_membership(h, elem, result, bounds)
    backward = sd_membership(h, result, elem, bounds)
    if forward.found and backward.found:
        status = WitnessStatus.FOUND
    elif WitnessStatus.EXCLUDED in (forward.status, backward.status):
        logger.error(f"{elem.label()} and {result.label()} generate different subrings")
        status = WitnessStatus.EXCLUDED
    else:
        status = WitnessStatus.UNRESOLVED
    return CanonicalForm(element=result, status=status, forward=forward, backward=backward, cycle=cycle)


# ===================== Lambda^1(Z[1/m] ⋉ I) =====================
@dataclass
class Merge:
    source: SDElement
    target: SDElement
    forward: IntPolynomial
    backward: IntPolynomial


@dataclass
class SemidirectGraphReport:
    graph: CompressedGraph
    candidate_count: int
    bound: int
    merges: List[Merge] = field(default_factory=list)
    unresolved: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unresolved

    @property
    def within_bound(self) -> bool:
        return self.graph.vertex_count <= self.bound


def lambda1_semidirect(h: LocalizedSemidirect,
                       bounds: Optional[WitnessBounds] = None) -> SemidirectGraphReport:
    """
    Candidates (b, r) over the squarefree representatives b and all r in I;
    (b, r) and (b, r') merge when both membership witnesses are found.
    """
    bounds = _resolve_bounds(bounds)
    I = h.ideal
    representatives = PrimeSupport.of(h.m).representatives(h.m)
    candidates = [SDElement(b, x) for b in representatives for x in range(I.order)]
    uf = UnionFind(range(len(candidates)))
    merges: List[Merge] = []
    excluded: List[Tuple[int, int]] = []
    pending: List[Tuple[int, int]] = []

    for block in range(len(representatives)):
        indices = range(block * I.order, (block + 1) * I.order)
        for i, j in itertools.combinations(indices, 2):
            if uf[i] == uf[j]:
                continue
            forward = sd_membership(h, candidates[i], candidates[j], bounds)
            backward = sd_membership(h, candidates[j], candidates[i], bounds)
            if WitnessStatus.EXCLUDED in (forward.status, backward.status):
                excluded.append((i, j))
            elif forward.found and backward.found:
                uf.union(i, j)
                merges.append(Merge(candidates[i], candidates[j], forward.polynomial, backward.polynomial))
            else:
                pending.append((i, j))

    separated = {frozenset((uf[i], uf[j])) for i, j in excluded}
    unresolved = [
        (candidates[i].label(), candidates[j].label())
        for i, j in pending
        if uf[i] != uf[j] and frozenset((uf[i], uf[j])) not in separated
    ]

    roots = sorted(min(members) for members in uf.to_sets())
    vertices = [candidates[root] for root in roots]
    edges = [
        (i, j) for i, j in itertools.combinations(range(len(vertices)), 2)
        if h.mul(vertices[i], vertices[j]) == h.mul(vertices[j], vertices[i])
    ]
    graph = CompressedGraph([v.label() for v in vertices], edges, range(len(vertices)))

    report = SemidirectGraphReport(
        graph=graph,
        candidate_count=len(candidates),
        bound=len(representatives) * I.order,
        merges=merges,
        unresolved=unresolved,
    )
    if not report.within_bound:
        logger.error(f"{graph.vertex_count} vertices exceed the bound {report.bound}")
    if unresolved:
        logger.warning(f"{len(unresolved)} candidate pairs unresolved at degree {bounds.degree}, "
                       f"coefficients {bounds.coefficient}")
    logger.info(f"Z[1/{h.m}] ⋉ {I.descriptor}: {graph.vertex_count} vertices, {len(merges)} merges")
    return report
