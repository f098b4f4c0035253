# ringlab/integral.py
"""
Monic annihilators from content-1 annihilators in rings of finite characteristic.

For each prime power p^n exactly dividing m = char R, work in R/p^nR. Write
q = s0 + p·s1 with s0 = q mod p made monic by a unit multiple, then descend:
r_0 = 0 and r_i = s1 mod (s0 + p·r_(i-1)); the monic s0 + p·r_(n-1) kills the
image of a. The branches are glued with integers c_i, sum c_i·(m/p^n_i) = 1.
"""
import logging
from typing import List, Tuple

import numpy as np
from sympy import factorint

try:
    from sympy import igcdex
except ImportError:  # sympy >= 1.14 no longer re-exports it at top level
    from sympy.core.intfunc import igcdex

from ringlab.errors import PreconditionError, RingLabError
from ringlab.finite_ring import Ring, element_id, quotient_ring
from ringlab.polynomials import IntPolynomial, content

logger = logging.getLogger(__name__)

__all__ = ["content", "monic_annihilator"]


def _prime_power_branch(ring: Ring, a: int, q: IntPolynomial, p: int, n: int) -> IntPolynomial:
    """Monic polynomial killing a in a ring of characteristic dividing p^n"""
    modulus = p ** n
    q = q.reduce_mod(modulus)
    s0 = q.reduce_mod(p)
    if s0.is_zero:
        raise PreconditionError(f"{q} vanishes mod {p}; content must be 1")
    unit = pow(s0.leading_coefficient, -1, modulus)
    q = q.scale(unit).reduce_mod(modulus)
    s0 = q.reduce_mod(p)
    s1 = IntPolynomial((c - c0) // p for c, c0 in
                       zip(q.coefficients, s0.coefficients + (0,) * (len(q.coefficients) - len(s0.coefficients))))

    remainder = IntPolynomial()
    for _ in range(1, n):
        divisor = (s0 + remainder.scale(p)).reduce_mod(modulus)
        _, remainder = s1.divmod_monic(divisor)
        remainder = remainder.reduce_mod(modulus)
    branch = (s0 + remainder.scale(p)).reduce_mod(modulus)

    if int(ring.evaluate(branch, a)) != ring.zero:
        logger.error(f"Branch p^n={modulus}: {branch} does not kill {a} in {ring.descriptor}")
        raise RingLabError(f"Descent failed modulo {modulus}")
    return branch


def _bezout(moduli: List[int]) -> List[int]:
    """c_i with sum c_i·moduli[i] = gcd(moduli)"""
    coefficients = [1]
    g = moduli[0]
    for modulus in moduli[1:]:
        x, y, g = igcdex(g, modulus)
        coefficients = [int(c * x) for c in coefficients] + [int(y)]
    return coefficients


def monic_annihilator(ring: Ring, a, q: IntPolynomial) -> IntPolynomial:
    """A monic s in Z[x] with s(a) = 0, given q with content 1 and q(a) = 0"""
    if ring.identity is None:
        raise PreconditionError(f"{ring.descriptor} is not unital")
    a = element_id(a)
    if q.is_zero or content(q) != 1:
        raise PreconditionError(f"{q} does not have content 1")
    if int(ring.evaluate(q, a)) != ring.zero:
        raise PreconditionError(f"{q} does not vanish at {a}")
    if q.is_monic:
        return q

    m = ring.characteristic
    if m == 1:
        return IntPolynomial.x()

    branches: List[Tuple[int, IntPolynomial]] = []
    ids = ring.elements()
    for p, n in sorted(factorint(m).items()):
        modulus = p ** n
        ideal = np.unique(np.asarray(ring.scalar(modulus, ids)))
        if ideal.size == 1:
            quotient, projection = ring, ids
        else:
            quotient, projection = quotient_ring(ring, ideal, label=f"{modulus}R")
        branch = _prime_power_branch(quotient, int(projection[a]), q, p, n)
        logger.info(f"{ring.descriptor}: branch {modulus} gives {branch}")
        branches.append((m // modulus, branch))

    degree = max(b.degree for _, b in branches)
    weights = _bezout([cofactor for cofactor, _ in branches])
    s = IntPolynomial()
    for c, (cofactor, branch) in zip(weights, branches):
        s = s + branch.shift(degree - branch.degree).scale(c * cofactor)
    s = s.reduce_mod(m)

    if not s.is_monic or int(ring.evaluate(s, a)) != ring.zero:
        logger.error(f"Recombined {s} fails for {a} in {ring.descriptor}")
        raise RingLabError("Monic annihilator failed verification")
    return s
