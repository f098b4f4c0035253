# ringlab/finite_ring.py
"""
Finite rings with exact element-level arithmetic and validated constructors.

Elements are dense ids 0..order-1. Small rings materialise numpy operation
tables; rings above the table threshold keep closed-form vectorised rules.
"""
from __future__ import annotations

import itertools
import json
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, Symbol, isprime

from ringlab.config import get_settings
from ringlab.errors import (
    BudgetExceededError, PreconditionError, RingConstructionError, SpecParseError
)
from ringlab.models import AxiomFailure, MatrixShape, Mode, RingReport, RingTableFile
from ringlab.polynomials import IntPolynomial

logger = logging.getLogger(__name__)

ArrayLike = Union[int, np.ndarray]
BinaryRule = Callable[[np.ndarray, np.ndarray], np.ndarray]
UnaryRule = Callable[[np.ndarray], np.ndarray]

_TABLE_BLOCK_ROWS = 256


# ===================== RING TYPES =====================
class Ring(ABC):
    """
    A finite ring on ids 0..order-1. add/neg/mul accept ints or numpy arrays
    and broadcast like numpy operators.
    """

    def __init__(self, order: int, zero: int, identity: Optional[int], descriptor: str):
        if order < 1:
            raise RingConstructionError(f"Ring order must be positive, got {order}")
        self.order = order
        self.zero = zero
        self.identity = identity
        self.descriptor = descriptor

    @abstractmethod
    def add(self, a: ArrayLike, b: ArrayLike) -> ArrayLike: ...

    @abstractmethod
    def neg(self, a: ArrayLike) -> ArrayLike: ...

    @abstractmethod
    def mul(self, a: ArrayLike, b: ArrayLike) -> ArrayLike: ...

    @property
    def is_table_backed(self) -> bool:
        return False

    @property
    def is_unital(self) -> bool:
        return self.identity is not None

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def element(self, id: int) -> Element:
        return Element(self, int(id))

    def sub(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return self.add(a, self.neg(b))

    def commutes(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return self.mul(a, b) == self.mul(b, a)

    @cached_property
    def characteristic(self) -> int:
        """Least m > 0 with m·x = 0 for every x (the additive exponent)"""
        x = self.elements()
        acc = x.copy()
        orders = np.zeros(self.order, dtype=np.int64)
        for k in range(1, self.order + 1):
            orders[(acc == self.zero) & (orders == 0)] = k
            if np.all(orders > 0):
                return int(np.lcm.reduce(orders))
            acc = np.asarray(self.add(acc, x))
        return 0  # additive structure is broken; validate_ring reports why

    def scalar(self, k: int, x: ArrayLike) -> ArrayLike:
        """k·x for an integer k (double-and-add, k may be negative)"""
        k = int(k)
        if k < 0:
            k, x = -k, self.neg(x)
        char = self.characteristic
        if char > 0:
            k %= char
        result = np.full(np.shape(x), self.zero, dtype=np.int64) if np.ndim(x) else self.zero
        base = x
        while k:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return result

    def scale(self, k: np.ndarray, x: ArrayLike) -> np.ndarray:
        """Elementwise k[i]·x[i] for nonnegative integer arrays k"""
        k, x = np.broadcast_arrays(np.asarray(k, dtype=np.int64), np.asarray(x, dtype=np.int64))
        k = k.copy()
        result = np.full(k.shape, self.zero, dtype=np.int64)
        base = x
        while np.any(k):
            bit = (k & 1).astype(bool)
            result = np.where(bit, self.add(result, base), result)
            base = np.asarray(self.add(base, base))
            k >>= 1
        return result

    def power(self, x: ArrayLike, k: int) -> ArrayLike:
        if k < 0:
            raise PreconditionError("Negative powers are not defined in a ring")
        if k == 0:
            if self.identity is None:
                raise PreconditionError(f"x^0 needs an identity; {self.descriptor} has none")
            return np.full(np.shape(x), self.identity, dtype=np.int64) if np.ndim(x) else self.identity
        result = None
        base = x
        while k:
            if k & 1:
                result = base if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def evaluate(self, q: IntPolynomial, x: ArrayLike) -> ArrayLike:
        """q(x), the constant term multiplying the identity"""
        if q.constant_term and self.identity is None:
            raise PreconditionError(
                f"Polynomial {q} has a constant term but {self.descriptor} is not unital"
            )
        result = self.scalar(q.constant_term, self.identity) if q.constant_term else self.zero
        if np.ndim(x):
            result = np.full(np.shape(x), result, dtype=np.int64)
        power = x
        for c in q.coefficients[1:]:
            if c:
                result = self.add(result, self.scalar(c, power))
            power = self.mul(power, x)
        return result

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor}, order={self.order})"


class TableRing(Ring):
    """Ring backed by materialised add/mul tables"""

    def __init__(
        self,
        add_table: np.ndarray,
        mul_table: np.ndarray,
        zero: int = 0,
        identity: Optional[int] = None,
        descriptor: str = "table",
        detect_identity: bool = False,
    ):
        add_table = np.asarray(add_table, dtype=np.int64)
        mul_table = np.asarray(mul_table, dtype=np.int64)
        order = add_table.shape[0] if add_table.ndim == 2 else 0
        for name, table in (("add", add_table), ("mul", mul_table)):
            if table.shape != (order, order):
                raise RingConstructionError(f"{name} table must be square, got shape {table.shape}")
            if order and (table.min() < 0 or table.max() >= order):
                raise RingConstructionError(f"{name} table has entries outside 0..{order - 1}")
        if not 0 <= zero < max(order, 1):
            raise RingConstructionError(f"zero id {zero} outside the carrier")
        if identity is not None and not 0 <= identity < order:
            raise RingConstructionError(f"identity id {identity} outside the carrier")

        self.add_table = add_table
        self.mul_table = mul_table
        # missing inverses map to zero so arithmetic never crashes; validate_ring flags them
        has_inverse = add_table == zero
        self.neg_table = np.where(has_inverse.any(axis=1), has_inverse.argmax(axis=1), zero)
        if identity is None and detect_identity:
            identity = find_identity(mul_table)
        super().__init__(order, zero, identity, descriptor)

    @property
    def is_table_backed(self) -> bool:
        return True

    def add(self, a, b):
        return self.add_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def mul(self, a, b):
        return self.mul_table[a, b]


class RuleRing(Ring):
    """Ring backed by vectorised closed-form rules"""

    def __init__(
        self,
        order: int,
        add_rule: BinaryRule,
        neg_rule: UnaryRule,
        mul_rule: BinaryRule,
        zero: int = 0,
        identity: Optional[int] = None,
        descriptor: str = "rule",
    ):
        super().__init__(order, zero, identity, descriptor)
        self._add = add_rule
        self._neg = neg_rule
        self._mul = mul_rule

    @staticmethod
    def _out(value: np.ndarray, *inputs) -> ArrayLike:
        return value if any(np.ndim(i) for i in inputs) else int(np.asarray(value).item())

    def add(self, a, b):
        return self._out(self._add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)), a, b)

    def neg(self, a):
        return self._out(self._neg(np.asarray(a, dtype=np.int64)), a)

    def mul(self, a, b):
        return self._out(self._mul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)), a, b)


@dataclass(frozen=True)
class Element:
    ring: Ring
    id: int

    def __post_init__(self):
        if not 0 <= self.id < self.ring.order:
            raise PreconditionError(f"Element id {self.id} outside {self.ring.descriptor}")

    def _other(self, other: Union[Element, int]) -> int:
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise PreconditionError("Elements belong to different rings")
            return other.id
        return int(other)

    def __add__(self, other):
        return Element(self.ring, int(self.ring.add(self.id, self._other(other))))

    def __sub__(self, other):
        return Element(self.ring, int(self.ring.sub(self.id, self._other(other))))

    def __neg__(self):
        return Element(self.ring, int(self.ring.neg(self.id)))

    def __mul__(self, other):
        return Element(self.ring, int(self.ring.mul(self.id, self._other(other))))

    def __pow__(self, k: int):
        return Element(self.ring, int(self.ring.power(self.id, k)))

    def __int__(self) -> int:
        return self.id

    def __repr__(self) -> str:
        return f"Element({self.id} in {self.ring.descriptor})"


def element_id(a: Union[Element, int]) -> int:
    return a.id if isinstance(a, Element) else int(a)


def find_identity(mul_table: np.ndarray) -> Optional[int]:
    """Two-sided identity of a multiplication table, if any"""
    ids = np.arange(mul_table.shape[0])
    left = np.all(mul_table == ids[None, :], axis=1)
    right = np.all(mul_table == ids[:, None], axis=0)
    both = np.flatnonzero(left & right)
    return int(both[0]) if both.size else None


def materialize(
    order: int,
    add_rule: BinaryRule,
    neg_rule: UnaryRule,
    mul_rule: BinaryRule,
    zero: int = 0,
    identity: Optional[int] = None,
    descriptor: str = "rule",
) -> Ring:
    """Tables for small orders, rules up to the budget, an error beyond"""
    settings = get_settings()
    if order > settings.rule_budget:
        raise BudgetExceededError(
            f"{descriptor} has order {order}, above the budget of {settings.rule_budget}"
        )
    if order > settings.table_threshold:
        logger.info(f"{descriptor}: order {order} kept rule-backed")
        return RuleRing(order, add_rule, neg_rule, mul_rule, zero, identity, descriptor)

    ids = np.arange(order, dtype=np.int64)
    add_table = np.empty((order, order), dtype=np.int64)
    mul_table = np.empty((order, order), dtype=np.int64)
    for start in range(0, order, _TABLE_BLOCK_ROWS):
        rows = ids[start:start + _TABLE_BLOCK_ROWS, None]
        add_table[start:start + _TABLE_BLOCK_ROWS] = add_rule(rows, ids[None, :])
        mul_table[start:start + _TABLE_BLOCK_ROWS] = mul_rule(rows, ids[None, :])
    return TableRing(add_table, mul_table, zero, identity, descriptor)


# ===================== VALIDATION =====================
def first_witness(mask: np.ndarray, columns: Sequence[np.ndarray]) -> Optional[List[int]]:
    """Lexicographically least failing tuple"""
    bad = np.flatnonzero(~mask)
    if bad.size == 0:
        return None
    cols = [np.broadcast_to(c, mask.shape).ravel()[bad] for c in columns]
    best = np.lexsort(tuple(reversed(cols)))[0]
    return [int(c[best]) for c in cols]


def validate_ring(candidate: Ring) -> RingReport:
    """
    Check every ring axiom; violations come back as data with a minimal witness.

    Triples are exhaustive up to the validation limit and sampled (fixed seed)
    above; pairs are exhaustive up to the table threshold.
    """
    settings = get_settings()
    n = candidate.order
    ids = candidate.elements()
    R = candidate
    failures: dict = {}

    def record(axiom: str, mask: np.ndarray, columns: Sequence[np.ndarray]):
        if axiom in failures:
            return
        witness = first_witness(np.asarray(mask), columns)
        if witness is not None:
            failures[axiom] = witness

    # singles
    record("additive_identity", (R.add(R.zero, ids) == ids) & (R.add(ids, R.zero) == ids), [ids])
    record("additive_inverse", R.add(ids, R.neg(ids)) == R.zero, [ids])
    if R.identity is not None:
        record("identity", (R.mul(R.identity, ids) == ids) & (R.mul(ids, R.identity) == ids), [ids])

    # pairs
    pairs_exhaustive = n <= settings.table_threshold
    if pairs_exhaustive:
        a, b = ids[:, None], ids[None, :]
    else:
        rng = np.random.default_rng(settings.seed)
        a, b = rng.integers(0, n, size=(2, settings.validation_samples))
    record("additive_commutativity", R.add(a, b) == R.add(b, a), [a, b])

    # triples
    triples_exhaustive = n <= settings.exhaustive_validation_limit

    triple_axioms = {"additive_associativity", "multiplicative_associativity",
                     "left_distributivity", "right_distributivity"}

    def check_triples(a, b, c):
        ab = R.add(a, b)
        record("additive_associativity", R.add(ab, c) == R.add(a, R.add(b, c)), [a, b, c])
        record("multiplicative_associativity",
               R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)), [a, b, c])
        record("left_distributivity",
               R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)), [a, b, c])
        record("right_distributivity",
               R.mul(ab, c) == R.add(R.mul(a, c), R.mul(b, c)), [a, b, c])

    if triples_exhaustive:
        b, c = ids[:, None], ids[None, :]
        for a in range(n):
            check_triples(np.int64(a), b, c)
            if triple_axioms <= failures.keys():
                break
    else:
        rng = np.random.default_rng(settings.seed + 1)
        a, b, c = rng.integers(0, n, size=(3, settings.validation_samples))
        check_triples(a, b, c)

    additive_ok = not any(k.startswith("additive") for k in failures)
    characteristic = candidate.characteristic if additive_ok else 0

    is_unital = R.identity is not None and "identity" not in failures
    if R.identity is None and isinstance(R, TableRing):
        is_unital = find_identity(R.mul_table) is not None

    report = RingReport(
        is_ring=not failures,
        is_unital=is_unital,
        characteristic=characteristic,
        failures=[AxiomFailure(axiom=k, witness=v) for k, v in failures.items()],
        exhaustive=triples_exhaustive and pairs_exhaustive,
    )
    if failures:
        logger.warning(f"{R.descriptor}: {len(failures)} axiom(s) violated: {sorted(failures)}")
    return report


# ===================== CONSTRUCTORS =====================
def z_mod(n: int) -> Ring:
    """Z_n with identity 1 (the zero ring for n = 1)"""
    if n < 1:
        raise RingConstructionError(f"Z_n needs n >= 1, got {n}")
    return materialize(
        n,
        lambda a, b: (a + b) % n,
        lambda a: (-a) % n,
        lambda a, b: (a * b) % n,
        zero=0,
        identity=1 % n,
        descriptor=f"Z_{n}" if n > 1 else "0",
    )


def zero_ring() -> Ring:
    return z_mod(1)


def null_ring(n: int) -> Ring:
    """Additive group Z_n with zero multiplication"""
    if n < 1:
        raise RingConstructionError(f"null ring needs n >= 1, got {n}")
    return materialize(
        n,
        lambda a, b: (a + b) % n,
        lambda a: (-a) % n,
        lambda a, b: np.zeros(np.broadcast(a, b).shape, dtype=np.int64),
        zero=0,
        identity=0 if n == 1 else None,
        descriptor=f"N_{n}",
    )


class _PrimeFieldPolynomials:
    """Vectorised arithmetic on base-p digit vectors modulo a monic polynomial"""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.n = len(modulus) - 1
        self.modulus = np.array(modulus[:-1], dtype=np.int64)
        self.place = p ** np.arange(self.n, dtype=np.int64)

    def digits(self, a: np.ndarray) -> np.ndarray:
        return (a[..., None] // self.place) % self.p

    def encode(self, d: np.ndarray) -> np.ndarray:
        return (d * self.place).sum(axis=-1)

    def add(self, a, b):
        return self.encode((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a):
        return self.encode((-self.digits(a)) % self.p)

    def mul(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        da, db = self.digits(a), self.digits(b)
        n, p = self.n, self.p
        prod = np.zeros(a.shape + (2 * n - 1,), dtype=np.int64)
        for i in range(n):
            prod[..., i:i + n] += da[..., i, None] * db
        prod %= p
        for deg in range(2 * n - 2, n - 1, -1):
            c = prod[..., deg]
            prod[..., deg - n:deg] = (prod[..., deg - n:deg] - c[..., None] * self.modulus) % p
            prod[..., deg] = 0
        return self.encode(prod[..., :n])


def _is_irreducible(coefficients: Sequence[int], p: int) -> bool:
    return Poly(list(reversed(coefficients)), Symbol("x"), modulus=p).is_irreducible


def smallest_irreducible(p: int, n: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n, constant term first"""
    for tail in itertools.product(range(p), repeat=n):
        if n > 1 and tail[0] == 0:
            continue  # divisible by x
        candidate = tail + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise RingConstructionError(f"No irreducible polynomial of degree {n} over Z_{p}")


def galois_field(p: int, n: int, modulus: Optional[Sequence[int]] = None) -> Ring:
    """GF(p^n) as Z_p[x]/(f); element ids are base-p digit vectors of residues"""
    if not isprime(p):
        raise RingConstructionError(f"{p} is not prime")
    if n < 1:
        raise RingConstructionError(f"Extension degree must be >= 1, got {n}")
    order = p ** n
    budget = get_settings().rule_budget
    if order > budget:
        raise BudgetExceededError(f"GF({p}^{n}) has {order} elements, above the budget of {budget}")

    if modulus is None:
        modulus = smallest_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
            raise RingConstructionError(f"{modulus} is not a monic irreducible of degree {n} mod {p}")

    arithmetic = _PrimeFieldPolynomials(p, modulus)
    poly_text = IntPolynomial(modulus)
    logger.info(f"GF({p}^{n}) built from {poly_text}")
    return materialize(
        order,
        arithmetic.add,
        arithmetic.neg,
        arithmetic.mul,
        zero=0,
        identity=1,
        descriptor=f"GF({p}^{n})",
    )


def _matrix_positions(k: int, shape: MatrixShape) -> List[Tuple[int, int]]:
    if shape == MatrixShape.FULL:
        return [(i, j) for i in range(k) for j in range(k)]
    return [(i, j) for i in range(k) for j in range(i, k)]


def matrix_ring(base: Ring, k: int, shape: MatrixShape = MatrixShape.FULL) -> Ring:
    """
    k×k matrices (all, or upper-triangular) over base; ids are base-|base|
    digit vectors of the entries in row-major position order
    """
    if k < 1:
        raise RingConstructionError(f"Matrix size must be >= 1, got {k}")
    positions = _matrix_positions(k, shape)
    q = base.order
    order = q ** len(positions)
    budget = get_settings().rule_budget
    if order > budget:
        raise BudgetExceededError(f"{k}x{k} matrices over {base.descriptor}: {order} > {budget}")
    place = q ** np.arange(len(positions), dtype=np.int64)

    def entries(a: np.ndarray) -> List[List[np.ndarray]]:
        digits = (a[..., None] // place) % q
        grid = [[np.full(a.shape, base.zero, dtype=np.int64) for _ in range(k)] for _ in range(k)]
        for idx, (i, j) in enumerate(positions):
            grid[i][j] = digits[..., idx]
        return grid

    def encode(grid: List[List[np.ndarray]]) -> np.ndarray:
        total = 0
        for idx, (i, j) in enumerate(positions):
            total = total + np.asarray(grid[i][j], dtype=np.int64) * place[idx]
        return total

    def add_rule(a, b):
        a, b = np.broadcast_arrays(a, b)
        A, B = entries(a), entries(b)
        return encode([[base.add(A[i][j], B[i][j]) for j in range(k)] for i in range(k)])

    def neg_rule(a):
        A = entries(a)
        return encode([[base.neg(A[i][j]) for j in range(k)] for i in range(k)])

    def mul_rule(a, b):
        a, b = np.broadcast_arrays(a, b)
        A, B = entries(a), entries(b)
        C = [[None] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                acc = base.mul(A[i][0], B[0][j])
                for l in range(1, k):
                    acc = base.add(acc, base.mul(A[i][l], B[l][j]))
                C[i][j] = acc
        return encode(C)

    identity = None
    if base.identity is not None:
        identity = sum(
            int(place[idx]) * (base.identity if i == j else base.zero)
            for idx, (i, j) in enumerate(positions)
        )
    name = "M" if shape == MatrixShape.FULL else "T"
    return materialize(order, add_rule, neg_rule, mul_rule, zero=0, identity=identity,
                       descriptor=f"{name}_{k}({base.descriptor})")


def matrix_embedding(base: Ring, k: int) -> np.ndarray:
    """Ids of T_k(base) mapped to the ids of the same matrices in M_k(base)"""
    q = base.order
    upper = _matrix_positions(k, MatrixShape.UPPER_TRIANGULAR)
    full = _matrix_positions(k, MatrixShape.FULL)
    if base.zero != 0:
        raise PreconditionError("matrix_embedding expects the base zero to have id 0")
    tri_ids = np.arange(q ** len(upper), dtype=np.int64)
    digits = (tri_ids[:, None] // (q ** np.arange(len(upper)))) % q
    full_place = {pos: q ** idx for idx, pos in enumerate(full)}
    return sum(digits[:, idx] * full_place[pos] for idx, pos in enumerate(upper))


def direct_product(R: Ring, S: Ring) -> Ring:
    """Componentwise R × S; id = r·|S| + s"""
    q = S.order

    def split(a):
        return np.divmod(a, q)

    def add_rule(a, b):
        (ar, as_), (br, bs) = split(a), split(b)
        return np.asarray(R.add(ar, br)) * q + S.add(as_, bs)

    def neg_rule(a):
        ar, as_ = split(a)
        return np.asarray(R.neg(ar)) * q + S.neg(as_)

    def mul_rule(a, b):
        (ar, as_), (br, bs) = split(a), split(b)
        return np.asarray(R.mul(ar, br)) * q + S.mul(as_, bs)

    identity = None
    if R.identity is not None and S.identity is not None:
        identity = R.identity * q + S.identity
    return materialize(R.order * q, add_rule, neg_rule, mul_rule,
                       zero=R.zero * q + S.zero, identity=identity,
                       descriptor=f"({R.descriptor} x {S.descriptor})")


def induced_subring(R: Ring, members: Sequence[int], descriptor: Optional[str] = None) -> TableRing:
    """The subset `members` with R's operations, relabelled 0..k-1 in sorted order"""
    members = np.array(sorted(set(int(m) for m in members)), dtype=np.int64)
    index = np.full(R.order, -1, dtype=np.int64)
    index[members] = np.arange(members.size)
    add_table = index[R.add(members[:, None], members[None, :])]
    mul_table = index[R.mul(members[:, None], members[None, :])]
    if (add_table < 0).any() or (mul_table < 0).any() or index[R.zero] < 0:
        raise RingConstructionError(f"{members.tolist()} is not closed in {R.descriptor}")
    return TableRing(add_table, mul_table, zero=int(index[R.zero]),
                     descriptor=descriptor or f"{R.descriptor}|{members.tolist()}",
                     detect_identity=True)


def quotient_ring(R: Ring, ideal: Sequence[int], label: str = "I") -> Tuple[TableRing, np.ndarray]:
    """
    R/I on additive cosets (labelled by least member); returns the ring and the
    projection array x -> coset id
    """
    ideal = np.array(sorted(set(int(i) for i in ideal)), dtype=np.int64)
    ids = R.elements()
    cosets = np.asarray(R.add(ids[:, None], ideal[None, :]))
    leaders = cosets.min(axis=1)
    reps, projection = np.unique(leaders, return_inverse=True)
    add_table = projection[R.add(reps[:, None], reps[None, :])]
    mul_table = projection[R.mul(reps[:, None], reps[None, :])]
    identity = int(projection[R.identity]) if R.identity is not None else None
    quotient = TableRing(add_table, mul_table, zero=int(projection[R.zero]), identity=identity,
                         descriptor=f"{R.descriptor}/{label}")
    return quotient, projection


def table_ring_from_file(path: str) -> TableRing:
    """Load a `table:<path>` JSON ring"""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = RingTableFile.model_validate(json.load(fh))
    except FileNotFoundError as e:
        raise SpecParseError(f"Ring table file not found: {path}") from e
    except (ValueError, json.JSONDecodeError) as e:
        raise SpecParseError(f"Invalid ring table file {path}: {e}") from e
    try:
        add_table = np.asarray(spec.add, dtype=np.int64).reshape(spec.order, spec.order)
        mul_table = np.asarray(spec.mul, dtype=np.int64).reshape(spec.order, spec.order)
    except ValueError as e:
        raise RingConstructionError(f"Tables in {path} do not have {spec.order}² entries") from e
    return TableRing(add_table, mul_table, zero=spec.zero, identity=spec.identity,
                     descriptor=spec.descriptor or f"table:{path}")


def realize_complete_graph(alpha: int, mode: Mode = Mode.UNITAL, p: int = 2) -> Ring:
    """
    A ring whose (unital) compressed commuting graph is K°_alpha:
    GF(p^(2^(alpha-1))) in unital mode, GF(p^(2^(alpha-2))) in nonunital mode,
    and the zero ring for alpha = 1.
    """
    if alpha < 1:
        raise PreconditionError(f"alpha must be >= 1, got {alpha}")
    limit = get_settings().realize_alpha_limit
    if alpha > limit:
        raise BudgetExceededError(f"alpha={alpha} is above the realisation limit {limit}")
    if alpha == 1:
        return zero_ring()
    exponent = alpha - 1 if mode == Mode.UNITAL else alpha - 2
    return galois_field(p, 2 ** exponent)


def frobenius_fixed_count(field: Ring, p: int, d: int) -> int:
    """Number of x with x^(p^d) = x"""
    ids = field.elements()
    image = ids
    for _ in range(d):
        image = np.asarray(field.power(image, p))
    return int(np.count_nonzero(image == ids))


__all__ = [
    "Ring", "TableRing", "RuleRing", "Element", "element_id", "materialize",
    "validate_ring", "z_mod", "zero_ring", "null_ring", "galois_field",
    "smallest_irreducible", "matrix_ring", "matrix_embedding", "direct_product",
    "induced_subring", "quotient_ring", "table_ring_from_file",
    "realize_complete_graph", "frobenius_fixed_count", "find_identity", "first_witness",
]
