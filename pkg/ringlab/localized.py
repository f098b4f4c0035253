# ringlab/localized.py
"""
Exact arithmetic in Z[1/m] and the class representatives of its unital
compressed commuting graph.

For a = n/D in lowest terms, <a>_1 = <1/P>_1 where P is the product of the
distinct primes dividing D. Both directions are constructive:

    1/P = c·(u·a + v)       with u·n + v·D = 1 and c = D/P
    N/E = (N·P^k/E)·(1/P)^k for any k with E | P^k
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterator, List, Optional, Tuple, Union

from sympy import factorint, primefactors

from ringlab.config import get_settings
from ringlab.errors import PreconditionError, SpecParseError
from ringlab.graph_kit import CompressedGraph, complete_with_loops
from ringlab.models import ArithOp, WitnessBounds, WitnessStatus
from ringlab.polynomials import IntPolynomial

logger = logging.getLogger(__name__)


def _unsupported_part(den: int, m: int) -> int:
    """What is left of den after removing every prime that divides m"""
    g = gcd(den, m)
    while g > 1:
        den //= g
        g = gcd(den, m)
    return den


# ===================== TYPES =====================
@dataclass(frozen=True)
class LocalizedRational:
    m: int
    num: int
    den: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError(f"Localization modulus must be >= 1, got {self.m}")
        if self.den == 0:
            raise PreconditionError("Zero denominator")
        value = Fraction(self.num, self.den)
        object.__setattr__(self, "num", value.numerator)
        object.__setattr__(self, "den", value.denominator)
        if _unsupported_part(value.denominator, self.m) != 1:
            raise PreconditionError(f"{value} is not in Z[1/{self.m}]")

    @classmethod
    def of(cls, m: int, value: Union[int, Fraction]) -> LocalizedRational:
        value = Fraction(value)
        return cls(m, value.numerator, value.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    def _check(self, other: LocalizedRational):
        if other.m != self.m:
            raise PreconditionError(f"Mixed moduli {self.m} and {other.m}")

    def __add__(self, other: LocalizedRational) -> LocalizedRational:
        self._check(other)
        return LocalizedRational.of(self.m, self.value + other.value)

    def __sub__(self, other: LocalizedRational) -> LocalizedRational:
        self._check(other)
        return LocalizedRational.of(self.m, self.value - other.value)

    def __mul__(self, other: LocalizedRational) -> LocalizedRational:
        self._check(other)
        return LocalizedRational.of(self.m, self.value * other.value)

    def __neg__(self) -> LocalizedRational:
        return LocalizedRational(self.m, -self.num, self.den)

    def __pow__(self, k: int) -> LocalizedRational:
        if k < 0:
            raise PreconditionError("Negative powers leave Z[1/m] in general")
        return LocalizedRational.of(self.m, self.value ** k)

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    def to_text(self) -> str:
        return f"{self.num}/{self.den}@{self.m}"


@dataclass(frozen=True)
class PrimeSupport:
    primes: Tuple[int, ...]

    @classmethod
    def of(cls, m: int) -> PrimeSupport:
        if m < 1:
            raise PreconditionError(f"m must be >= 1, got {m}")
        return cls(tuple(primefactors(m)))

    @property
    def s(self) -> int:
        return len(self.primes)

    def subsets(self) -> Iterator[Tuple[int, ...]]:
        for size in range(self.s + 1):
            yield from itertools.combinations(self.primes, size)

    def representatives(self, m: int) -> List[LocalizedRational]:
        """1/prod(T) for every subset T, smallest subsets first"""
        return [LocalizedRational(m, 1, prod(t)) for t in self.subsets()]


_LOCALIZED_TEXT = re.compile(r"^\s*(-?\d+)(?:/(\d+))?@(\d+)\s*$")


def parse_localized(text: str) -> LocalizedRational:
    """Parse "num/den@m" or "num@m" """
    match = _LOCALIZED_TEXT.match(text)
    if not match:
        raise SpecParseError(f"Expected num/den@m, got {text!r}")
    num, den, m = match.groups()
    try:
        return LocalizedRational(int(m), int(num), int(den or 1))
    except PreconditionError as e:
        raise SpecParseError(str(e)) from e


# ===================== OPERATIONS =====================
def loc_arith(a: LocalizedRational, b: Optional[LocalizedRational], op: ArithOp) -> LocalizedRational:
    if op == ArithOp.NEG:
        return -a
    if b is None:
        raise PreconditionError(f"{op.value} needs two operands")
    if op == ArithOp.ADD:
        return a + b
    return a * b


def _radical(n: int) -> int:
    return prod(primefactors(n)) if n > 1 else 1


def class_representative(a: LocalizedRational) -> LocalizedRational:
    """1 over the product of the distinct primes dividing den(a)"""
    return LocalizedRational(a.m, 1, _radical(a.den))


def divisor_count(n: int) -> int:
    """d(n)"""
    if n < 1:
        raise PreconditionError(f"d(n) needs n >= 1, got {n}")
    return prod(e + 1 for e in factorint(n).values())


def _supports(source_den: int, target_den: int) -> bool:
    return _unsupported_part(target_den, source_den) == 1


def representative_witness(a: LocalizedRational) -> IntPolynomial:
    """P with P(a) = class_representative(a)"""
    if a.is_integer:
        return IntPolynomial.constant(1)
    d = a.den
    c = d // _radical(d)
    u = pow(a.num, -1, d)
    v = (1 - u * a.num) // d
    return IntPolynomial((c * v, c * u))


def constructive_witness(a: LocalizedRational, target: LocalizedRational) -> Optional[IntPolynomial]:
    """
    A polynomial q with q(a) = target built from the explicit formulas, or None
    when the denominator of target has a prime that den(a) lacks. No bounds.
    """
    if a.m != target.m:
        raise PreconditionError(f"Mixed moduli {a.m} and {target.m}")
    if not _supports(a.den, target.den):
        return None
    if target == a:
        return IntPolynomial.x()
    if target.is_integer:
        return IntPolynomial.constant(target.num)

    to_rep = representative_witness(a)
    p = _radical(a.den)
    k = 1
    while (p ** k) % target.den:
        k += 1
    from_rep = IntPolynomial.monomial(target.num * p ** k // target.den, k)
    q = from_rep.compose(to_rep)
    if q.evaluate_at(a.value) != target.value:
        logger.error(f"Constructive witness {q} fails for {a} -> {target}")
        raise PreconditionError(f"Constructive witness failed for {a} -> {target}")
    return q


@dataclass(frozen=True)
class MembershipWitness:
    status: WitnessStatus
    polynomial: Optional[IntPolynomial] = None

    @property
    def found(self) -> bool:
        return self.status == WitnessStatus.FOUND


def _search(a: Fraction, target: Fraction, bounds: WitnessBounds) -> Optional[IntPolynomial]:
    """Bounded search, stopped at the search limit; c0 is solved for directly"""
    limit = get_settings().witness_search_limit
    coefficient = bounds.coefficient
    values = sorted(range(-coefficient, coefficient + 1), key=lambda c: (abs(c), c < 0))
    tried = 0
    for degree in range(1, bounds.degree + 1):
        powers = [a ** i for i in range(1, degree + 1)]
        for tail in itertools.product(values, repeat=degree):
            if tail[-1] == 0:
                continue
            tried += 1
            if tried > limit:
                return None
            c0 = target - sum(c * p for c, p in zip(tail, powers))
            if c0.denominator == 1 and abs(c0.numerator) <= coefficient:
                return IntPolynomial((c0.numerator,) + tail)
    return None


def membership_witness(
    a: LocalizedRational,
    target: LocalizedRational,
    degree_bound: Optional[int] = None,
    coeff_bound: Optional[int] = None,
) -> MembershipWitness:
    """
    q in Z[x] with q(a) = target inside the bounds. EXCLUDED when no q exists
    at all, UNRESOLVED when none was found inside the bounds.
    """
    settings = get_settings()
    bounds = WitnessBounds(
        degree=settings.localized_degree if degree_bound is None else degree_bound,
        coefficient=settings.localized_coefficient if coeff_bound is None else coeff_bound,
    )
    constructive = constructive_witness(a, target)
    if constructive is None:
        return MembershipWitness(WitnessStatus.EXCLUDED)
    if constructive.fits(bounds.degree, bounds.coefficient):
        return MembershipWitness(WitnessStatus.FOUND, constructive)

    found = _search(a.value, target.value, bounds)
    if found is not None:
        if found.evaluate_at(a.value) != target.value:
            logger.error(f"Search witness {found} fails for {a} -> {target}")
            raise PreconditionError(f"Search witness failed for {a} -> {target}")
        return MembershipWitness(WitnessStatus.FOUND, found)
    logger.warning(f"No witness {a} -> {target} within degree {bounds.degree}, "
                   f"coefficients {bounds.coefficient}")
    return MembershipWitness(WitnessStatus.UNRESOLVED)


def lambda1_localized(m: int) -> CompressedGraph:
    """Lambda^1(Z[1/m]) = K°_(2^s), vertices labelled by their representatives"""
    support = PrimeSupport.of(m)
    labels = [str(r) for r in support.representatives(m)]
    graph = complete_with_loops(len(labels))
    logger.info(f"Z[1/{m}]: s={support.s}, {len(labels)} classes")
    return CompressedGraph(labels, graph.edges, graph.loops)
