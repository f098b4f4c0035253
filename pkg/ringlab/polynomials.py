# ringlab/polynomials.py
"""
Integer polynomials, constant term first, backed by sympy for arithmetic
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, List, Tuple

from sympy import Poly, Symbol, ZZ

from ringlab.errors import PreconditionError, SpecParseError

_x = Symbol("x")


def _trim(coefficients: Iterable[int]) -> Tuple[int, ...]:
    coeffs = [int(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: Tuple[int, ...]  # constant first, no trailing zeros

    def __init__(self, coefficients: Iterable[int] = ()):
        object.__setattr__(self, "coefficients", _trim(coefficients))

    # ===================== CONSTRUCTORS =====================
    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> IntPolynomial:
        return cls((0,) * k + (c,))

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse "c0,c1,c2,..." (constant first)"""
        try:
            return cls(int(part) for part in text.replace(" ", "").split(",") if part != "")
        except ValueError as e:
            raise SpecParseError(f"Invalid polynomial coefficient list: {text!r}") from e

    @classmethod
    def from_poly(cls, poly: Poly) -> IntPolynomial:
        return cls(reversed([int(c) for c in poly.all_coeffs()]))

    # ===================== PROPERTIES =====================
    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise PreconditionError("Degree of the zero polynomial is undefined")
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    @property
    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    @property
    def constant_term(self) -> int:
        return self.coefficients[0] if self.coefficients else 0

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self.coefficients), default=0)

    def fits(self, degree: int, coefficient: int) -> bool:
        """True when deg <= degree and every |c| <= coefficient"""
        if self.is_zero:
            return True
        return self.degree <= degree and self.max_abs_coefficient() <= coefficient

    # ===================== ARITHMETIC =====================
    def as_poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], _x, domain=ZZ)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial.from_poly(self.as_poly() + other.as_poly())

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial.from_poly(self.as_poly() - other.as_poly())

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coefficients)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial.from_poly(self.as_poly() * other.as_poly())

    def scale(self, k: int) -> IntPolynomial:
        return IntPolynomial(k * c for c in self.coefficients)

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by x^k"""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coefficients)

    def compose(self, inner: IntPolynomial) -> IntPolynomial:
        """self(inner(x))"""
        return IntPolynomial.from_poly(self.as_poly().compose(inner.as_poly()))

    def divmod_monic(self, divisor: IntPolynomial) -> Tuple[IntPolynomial, IntPolynomial]:
        """Division algorithm over Z; exact because the divisor is monic"""
        if not divisor.is_monic:
            raise PreconditionError(f"Divisor {divisor} is not monic")
        quotient, remainder = self.as_poly().div(divisor.as_poly())
        return IntPolynomial.from_poly(quotient), IntPolynomial.from_poly(remainder)

    def reduce_mod(self, m: int, symmetric: bool = False) -> IntPolynomial:
        """Reduce coefficients modulo m (into [0, m) or the symmetric range)"""
        reduced: List[int] = []
        for c in self.coefficients:
            r = c % m
            if symmetric and r > m // 2:
                r -= m
            reduced.append(r)
        return IntPolynomial(reduced)

    def evaluate_at(self, value):
        """Horner evaluation at an int or Fraction"""
        result = 0
        for c in reversed(self.coefficients):
            result = result * value + c
        return result

    # ===================== FORMATTING =====================
    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coefficients) or "0"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return str(self.as_poly().as_expr())


def content(q: IntPolynomial) -> int:
    """gcd of all coefficients"""
    if q.is_zero:
        raise PreconditionError("content of the zero polynomial is undefined")
    return reduce(gcd, (abs(c) for c in q.coefficients))
