"""Polynomial arithmetic over F_p and F_p[x]/(phi): gcds, squarefree and
distinct-degree structure, and irreducible counts.

Only degrees and counts of irreducible factors are ever needed downstream,
so factorization stops at distinct-degree profiles: no randomized
equal-degree splitting, everything deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import NotSquarefree, PrimeTooLarge
from .valuations import require_prime

__all__ = [
    "FpPoly",
    "FqContext",
    "FqPoly",
    "DegreeProfile",
    "count_monic_irreducibles",
    "enumerate_monic_irreducibles",
]

_P_BOUND = 2**31


def _check_prime(p: int) -> int:
    require_prime(p)
    if p >= _P_BOUND:
        raise PrimeTooLarge(p)
    return p


@dataclass(frozen=True)
class FpPoly:
    """Dense polynomial over F_p; coefficients reduced into [0, p)."""

    p: int
    coeffs: tuple[int, ...]

    @staticmethod
    def make(p: int, coefficients) -> "FpPoly":
        _check_prime(p)
        cs = [c % p for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        return FpPoly(p, tuple(cs))

    @staticmethod
    def zero(p: int) -> "FpPoly":
        return FpPoly.make(p, ())

    @staticmethod
    def one(p: int) -> "FpPoly":
        return FpPoly.make(p, (1,))

    @staticmethod
    def x(p: int) -> "FpPoly":
        return FpPoly.make(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __add__(self, other: "FpPoly") -> "FpPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return FpPoly.make(self.p, out)

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = (out[i] - c) % self.p
        return FpPoly.make(self.p, out)

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        if self.is_zero or other.is_zero:
            return FpPoly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly.make(self.p, out)

    def scale(self, c: int) -> "FpPoly":
        c %= self.p
        return FpPoly.make(self.p, [a * c for a in self.coeffs])

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        inv = pow(other.leading, -1, p)
        rem = list(self.coeffs)
        dd = other.degree
        if self.degree < dd:
            return FpPoly.zero(p), self
        quot = [0] * (self.degree - dd + 1)
        for k in range(self.degree, dd - 1, -1):
            c = rem[k] % p
            if c:
                q = c * inv % p
                quot[k - dd] = q
                for j in range(dd + 1):
                    rem[k - dd + j] = (rem[k - dd + j] - q * other.coeffs[j]) % p
        return FpPoly.make(p, quot), FpPoly.make(p, rem[:dd])

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def monic(self) -> "FpPoly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(pow(self.leading, -1, self.p))

    def gcd(self, other: "FpPoly") -> "FpPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "FpPoly":
        return FpPoly.make(self.p, [(i * c) % self.p for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, exponent: int, modulus: "FpPoly") -> "FpPoly":
        result = FpPoly.one(self.p)
        base = self % modulus
        e = exponent
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def evaluate(self, point: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * point + c) % self.p
        return acc

    def is_squarefree(self) -> bool:
        if self.degree < 1:
            return not self.is_zero
        d = self.derivative()
        if d.is_zero:
            return False
        return self.gcd(d).degree == 0

    def is_irreducible(self) -> bool:
        """Rabin's test: x^(p^n) = x mod f, and no proper subfield fixes it."""
        n = self.degree
        if n < 1:
            return False
        if n == 1:
            return True
        p = self.p
        x = FpPoly.x(p)
        if (x.pow_mod(p**n, self) - (x % self)) % self != FpPoly.zero(p):
            return False
        for q in _prime_factors(n):
            h = x.pow_mod(p ** (n // q), self) - (x % self)
            if self.gcd(h).degree != 0:
                return False
        return True

    def p_th_root(self) -> "FpPoly":
        # valid only when the derivative vanishes: f(x) = g(x^p) = g(x)^p over F_p
        return FpPoly.make(self.p, self.coeffs[:: self.p])

    def squarefree_decomposition(self) -> list[tuple["FpPoly", int]]:
        """Monic pairwise-coprime squarefree parts with multiplicities.

        Returns [(g, m), ...] with self = lc * prod g^m, handling the
        characteristic-p collapse (vanishing derivative means a p-th power).
        """
        parts: dict[int, FpPoly] = {}
        _sqf_into(self.monic(), 1, parts)
        return sorted(((g, m) for m, g in parts.items()), key=lambda gm: gm[1])


def _sqf_into(f: FpPoly, scale: int, parts: dict[int, FpPoly]) -> None:
    if f.degree < 1:
        return
    d = f.derivative()
    if d.is_zero:
        _sqf_into(f.p_th_root(), scale * f.p, parts)
        return
    c = f.gcd(d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            key = i * scale
            parts[key] = parts[key] * z if key in parts else z
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        _sqf_into(c.p_th_root(), scale * f.p, parts)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


#: (degree, count) pairs for the irreducible factors of a squarefree polynomial.
DegreeProfile = list[tuple[int, int]]


@dataclass(frozen=True)
class FqContext:
    """The field F_p[x]/(modulus) with modulus irreducible over F_p."""

    p: int
    modulus: FpPoly

    @property
    def extension_degree(self) -> int:
        return self.modulus.degree

    @property
    def q(self) -> int:
        return self.p ** self.modulus.degree

    def reduce(self, a: FpPoly) -> FpPoly:
        return a % self.modulus

    def from_int(self, c: int) -> FpPoly:
        return FpPoly.make(self.p, (c,))

    @property
    def zero(self) -> FpPoly:
        return FpPoly.zero(self.p)

    @property
    def one(self) -> FpPoly:
        return FpPoly.one(self.p)

    def add(self, a: FpPoly, b: FpPoly) -> FpPoly:
        return a + b

    def sub(self, a: FpPoly, b: FpPoly) -> FpPoly:
        return a - b

    def mul(self, a: FpPoly, b: FpPoly) -> FpPoly:
        return (a * b) % self.modulus

    def inv(self, a: FpPoly) -> FpPoly:
        if a.is_zero:
            raise ZeroDivisionError("inverse of zero in F_q")
        # extended Euclid in F_p[x]
        r0, r1 = self.modulus, a % self.modulus
        t0, t1 = FpPoly.zero(self.p), FpPoly.one(self.p)
        while not r1.is_zero:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        if r0.degree != 0:
            raise ZeroDivisionError("element is not invertible; modulus not irreducible?")
        return self.reduce(t0.scale(pow(r0.leading, -1, self.p)))

    def elements(self) -> Iterator[FpPoly]:
        # all q field elements; intended for small brute-force oracles only
        k = self.extension_degree
        p = self.p
        for code in range(p**k):
            cs = []
            c = code
            for _ in range(k):
                cs.append(c % p)
                c //= p
            yield FpPoly.make(p, cs)


@dataclass(frozen=True)
class FqPoly:
    """Polynomial in Y over F_q, coefficients as reduced F_p[x] representatives."""

    ctx: FqContext
    coeffs: tuple[FpPoly, ...]

    @staticmethod
    def make(ctx: FqContext, coefficients) -> "FqPoly":
        cs = [ctx.reduce(c) for c in coefficients]
        while cs and cs[-1].is_zero:
            cs.pop()
        return FqPoly(ctx, tuple(cs))

    @staticmethod
    def zero(ctx: FqContext) -> "FqPoly":
        return FqPoly.make(ctx, ())

    @staticmethod
    def one(ctx: FqContext) -> "FqPoly":
        return FqPoly.make(ctx, (ctx.one,))

    @staticmethod
    def y(ctx: FqContext) -> "FqPoly":
        return FqPoly.make(ctx, (ctx.zero, ctx.one))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FpPoly:
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    def coefficient(self, k: int) -> FpPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ctx.zero

    def __add__(self, other: "FqPoly") -> "FqPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return FqPoly.make(self.ctx, out)

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        out = list(self.coeffs) + [self.ctx.zero] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return FqPoly.make(self.ctx, out)

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        if self.is_zero or other.is_zero:
            return FqPoly.zero(self.ctx)
        ctx = self.ctx
        out = [ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero:
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero:
                        out[i + j] = out[i + j] + a * b
        return FqPoly.make(ctx, [ctx.reduce(c) for c in out])

    def scale(self, c: FpPoly) -> "FqPoly":
        ctx = self.ctx
        return FqPoly.make(ctx, [ctx.mul(a, c) for a in self.coeffs])

    def monic(self) -> "FqPoly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.ctx.inv(self.leading))

    def __divmod__(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        inv = ctx.inv(other.leading)
        rem = list(self.coeffs)
        dd = other.degree
        if self.degree < dd:
            return FqPoly.zero(ctx), self
        quot = [ctx.zero] * (self.degree - dd + 1)
        for k in range(self.degree, dd - 1, -1):
            c = ctx.reduce(rem[k])
            if not c.is_zero:
                q = ctx.mul(c, inv)
                quot[k - dd] = q
                for j in range(dd + 1):
                    rem[k - dd + j] = rem[k - dd + j] - ctx.mul(q, other.coeffs[j])
        return FqPoly.make(ctx, quot), FqPoly.make(ctx, rem[:dd])

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[0]

    def gcd(self, other: "FqPoly") -> "FqPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self) -> "FqPoly":
        ctx = self.ctx
        return FqPoly.make(
            ctx, [ctx.mul(c, ctx.from_int(i)) for i, c in enumerate(self.coeffs)][1:]
        )

    def pow_mod(self, exponent: int, modulus: "FqPoly") -> "FqPoly":
        result = FqPoly.one(self.ctx)
        base = self % modulus
        e = exponent
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def evaluate(self, point: FpPoly) -> FpPoly:
        ctx = self.ctx
        acc = ctx.zero
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, point), c)
        return acc

    def is_squarefree(self) -> bool:
        if self.degree < 1:
            return not self.is_zero
        d = self.derivative()
        if d.is_zero:
            return False
        return self.gcd(d).degree == 0


def gcd_fq(a: FqPoly, b: FqPoly) -> FqPoly:
    if a.is_zero and b.is_zero:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    return a.gcd(b)


def fp_context(p: int) -> FqContext:
    """F_p itself, presented as F_p[x]/(x) so the F_q machinery applies."""
    return FqContext(p=p, modulus=FpPoly.x(p))


def fq_from_fp(ctx: FqContext, poly: FpPoly) -> FqPoly:
    """Reinterpret an F_p[Y] polynomial over the prime subfield of ctx."""
    return FqPoly.make(ctx, [FpPoly.make(ctx.p, (c,)) for c in poly.coeffs])


def distinct_degree_profile(poly: FqPoly) -> DegreeProfile:
    """Count irreducible factors of each degree over F_q for squarefree input."""
    if not poly.is_squarefree():
        raise NotSquarefree("distinct-degree profile requires squarefree input")
    ctx = poly.ctx
    q = ctx.q
    remaining = poly.monic()
    y = FqPoly.y(ctx)
    w = y
    profile: DegreeProfile = []
    h = 0
    while remaining.degree > 0:
        h += 1
        if remaining.degree < 2 * h:
            profile.append((remaining.degree, 1))
            break
        w = w.pow_mod(q, remaining)
        g = remaining.gcd(w - y)
        if g.degree > 0:
            profile.append((h, g.degree // h))
            remaining = remaining // g
            w = w % remaining
    return profile


def count_monic_irreducibles(p: int, h: int) -> int:
    """Necklace count: (1/h) * sum over d | h of mu(d) p^(h/d)."""
    require_prime(p)
    if h < 1:
        raise ValueError("degree must be positive")
    total = 0
    for d in range(1, h + 1):
        if h % d == 0:
            total += _moebius(d) * p ** (h // d)
    assert total % h == 0
    return total // h


def _moebius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def enumerate_monic_polys(p: int, degree: int) -> Iterator[FpPoly]:
    for code in range(p**degree):
        cs = []
        c = code
        for _ in range(degree):
            cs.append(c % p)
            c //= p
        cs.append(1)
        yield FpPoly.make(p, cs)


def enumerate_monic_irreducibles(p: int, degree: int) -> Iterator[FpPoly]:
    """Deterministic lexicographic enumeration; intended for small p^degree."""
    for f in enumerate_monic_polys(p, degree):
        if f.is_irreducible():
            yield f
