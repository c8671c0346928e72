"""p-adic valuations of rationals, with a totalized Infinity for v_p(0).

Rationals and slopes are plain ``fractions.Fraction`` values throughout the
package: the stdlib type already guarantees lowest terms, a positive
denominator and exact cross-multiplied comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import NonPrimeModulus

__all__ = ["INFINITY", "Infinity", "Valuation", "is_prime", "vp", "vp_int", "vp_factorial"]


class Infinity:
    """The valuation of zero.

    A dedicated singleton rather than a sentinel integer: it compares greater
    than every finite valuation and absorbs addition, so valuation arithmetic
    never needs special-casing at call sites.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("newtonpoly.Infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int) and other > 0:
            return self
        raise TypeError("Infinity may only be scaled by a positive integer")

    __rmul__ = __mul__


INFINITY = Infinity()

#: A p-adic valuation: a (possibly negative) integer, or INFINITY for v_p(0).
Valuation = Union[int, Infinity]

# Strong-pseudoprime witnesses: deterministic for all n < 3.3 * 10^24,
# comfortably covering the documented n < 2^64 guarantee.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    """Validate p eagerly; every downstream theorem silently assumes p prime."""
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise NonPrimeModulus(p)
    return p


def vp_int(n: int, p: int) -> Valuation:
    # internal: p assumed prime, n an int
    if n == 0:
        return INFINITY
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(q: Fraction | int, p: int) -> Valuation:
    """Exponent of the prime p in the rational q; INFINITY for q = 0.

    Negative values are first-class: coefficients live in Q, so p may divide
    the denominator.
    """
    require_prime(p)
    if isinstance(q, int):
        return vp_int(q, p)
    q = Fraction(q)
    if q == 0:
        return INFINITY
    v = vp_int(q.numerator, p)
    if v == 0:
        w = vp_int(q.denominator, p)
        if w:
            return -w
    return v


def vp_factorial(m: int, p: int) -> int:
    """v_p(m!) by the Legendre sum of floor(m / p^k)."""
    require_prime(p)
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = 0
    q = p
    while q <= m:
        total += m // q
        q *= p
    return total
