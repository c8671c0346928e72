"""Dense univariate polynomials over Q with exact composition and iteration.

This module is the brute-force oracle substrate: everything downstream that
claims a polygon shape can be checked against a literal composition done
here. The representation is dense because polygon construction needs the
valuation of every exponent and composition fills coefficients in densely
anyway at the target degrees (<= 10^5 coefficients).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegreeCapExceeded, NonMonicBase, ParseError

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "RationalPoly",
    "PhiExpansion",
    "X",
    "ZERO",
    "ONE",
    "compose",
    "iterate",
    "phi_expand",
    "parse",
    "render",
    "congruent_mod",
]

#: Hard default on the number of coefficients a composition may produce.
#: d^n grows doubly exponentially; the oracle is only meant for desk scale,
#: so exhaustion is replaced by a clear error.
DEFAULT_DEGREE_CAP = 100_000

# Below this size schoolbook convolution beats the packing overhead; it also
# covers the Horner hot path, where one factor is the small inner polynomial.
_SCHOOLBOOK_MIN = 32


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _pack(values: Sequence[int], width: int) -> int:
    buf = bytearray(width * len(values))
    for i, v in enumerate(values):
        if v:
            nb = (v.bit_length() + 7) // 8
            base = i * width
            buf[base : base + nb] = v.to_bytes(nb, "little")
    return int.from_bytes(buf, "little")


def _unpack(packed: int, width: int, count: int) -> list[int]:
    raw = packed.to_bytes(width * (count + 1), "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(count)
    ]


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Pack each sign part into one big integer so CPython's subquadratic
    # bigint multiply does the convolution. Slot width must hold any
    # coefficient of the nonnegative convolutions plus one carry-free bit
    # for the pairwise sums below.
    max_a = max(abs(x) for x in a)
    max_b = max(abs(x) for x in b)
    bits = (
        max_a.bit_length()
        + max_b.bit_length()
        + min(len(a), len(b)).bit_length()
        + 1
    )
    width = (bits + 7) // 8
    a_pos = _pack([x if x > 0 else 0 for x in a], width)
    a_neg = _pack([-x if x < 0 else 0 for x in a], width)
    b_pos = _pack([x if x > 0 else 0 for x in b], width)
    b_neg = _pack([-x if x < 0 else 0 for x in b], width)
    count = len(a) + len(b) - 1
    plus = _unpack(a_pos * b_pos + a_neg * b_neg, width, count)
    minus = _unpack(a_pos * b_neg + a_neg * b_pos, width, count)
    return [p - m for p, m in zip(plus, minus)]


def _int_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if min(len(a), len(b)) <= _SCHOOLBOOK_MIN or len(a) * len(b) <= 4096:
        return _schoolbook(a, b)
    return _kronecker(a, b)


class RationalPoly:
    """Immutable dense polynomial over Q, low-to-high coefficient order."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Fraction | int | str] = ()):
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    # -- basic structure ---------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial (degree is undefined there)."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self._coeffs[-1]

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    @property
    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"RationalPoly({render(self)!r})"

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return RationalPoly([-c for c in self._coeffs])

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            q = Fraction(other)
            return RationalPoly([c * q for c in self._coeffs])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        da = math.lcm(*(c.denominator for c in self._coeffs))
        db = math.lcm(*(c.denominator for c in other._coeffs))
        ints_a = [int(c * da) for c in self._coeffs]
        ints_b = [int(c * db) for c in other._coeffs]
        den = da * db
        return RationalPoly([Fraction(c, den) for c in _int_convolve(ints_a, ints_b)])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def evaluate(self, point: Fraction | int) -> Fraction:
        point = Fraction(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * point + c
        return acc

    def monic_divmod(self, divisor: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        """Euclidean division by a monic divisor; exact over Q."""
        if not divisor.is_monic:
            raise NonMonicBase("division base must be monic")
        dd = divisor.degree
        rem = list(self._coeffs)
        if self.degree < dd:
            return ZERO, self
        quot = [Fraction(0)] * (self.degree - dd + 1)
        for k in range(self.degree, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for j in range(dd + 1):
                    rem[k - dd + j] -= c * divisor._coeffs[j]
        return RationalPoly(quot), RationalPoly(rem[:dd])

    def shifted(self, k: int) -> "RationalPoly":
        """Multiply by x^k."""
        if self.is_zero or k == 0:
            return self
        return RationalPoly([Fraction(0)] * k + list(self._coeffs))


def _coerce(value) -> RationalPoly | None:
    if isinstance(value, RationalPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalPoly([value])
    return None


ZERO = RationalPoly()
ONE = RationalPoly([1])
X = RationalPoly([0, 1])


@dataclass(frozen=True)
class PhiExpansion:
    """Base-phi digit expansion: poly = sum(digits[i] * phi^i), deg digit < deg phi."""

    base: RationalPoly
    digits: tuple[RationalPoly, ...]

    def reassemble(self) -> RationalPoly:
        acc = ZERO
        for digit in reversed(self.digits):
            acc = acc * self.base + digit
        return acc


def compose(outer: RationalPoly, inner: RationalPoly, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> RationalPoly:
    """outer(inner(x)) with exact coefficients.

    Horner-style accumulation over the outer coefficients keeps every
    intermediate no larger than the final result; coefficient blow-up is the
    runtime bottleneck, not degree.
    """
    if outer.degree >= 1 and inner.degree >= 1:
        projected = outer.degree * inner.degree
        if projected + 1 > degree_cap:
            raise DegreeCapExceeded(projected, degree_cap)
    if outer.is_zero:
        return ZERO
    acc = RationalPoly([outer.leading_coefficient])
    for k in range(outer.degree - 1, -1, -1):
        acc = acc * inner
        c = outer.coefficient(k)
        if c:
            acc = acc + c
    return acc


def iterate(poly: RationalPoly, n: int, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> RationalPoly:
    """n-th iterate under self-composition; the 0-th iterate is x."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    d = poly.degree
    if d >= 2 and n >= 1:
        projected = d**n
        if projected + 1 > degree_cap:
            raise DegreeCapExceeded(projected, degree_cap)
    result = X
    for _ in range(n):
        result = compose(poly, result, degree_cap=degree_cap)
    return result


def phi_expand(poly: RationalPoly, phi: RationalPoly) -> PhiExpansion:
    """Repeated Euclidean division by monic phi; reassembly is exact."""
    if phi.degree < 1 or not phi.is_monic:
        raise NonMonicBase("phi must be monic of degree >= 1")
    digits: list[RationalPoly] = []
    current = poly
    while not current.is_zero:
        current, rem = current.monic_divmod(phi)
        digits.append(rem)
    if not digits:
        digits.append(ZERO)
    return PhiExpansion(base=phi, digits=tuple(digits))


def congruent_mod(f: RationalPoly, g: RationalPoly, p: int) -> bool:
    """Coefficient-wise congruence mod p: every difference has v_p >= 1."""
    from .valuations import vp

    diff = f - g
    return all(vp(c, p) >= 1 for c in diff.coefficients)


# -- text format ----------------------------------------------------------
#
# Grammar: terms `c`, `c*x`, `c x^k`, `x^k` joined by +/-; coefficients are
# integers or a/b rationals, optionally parenthesised; whitespace is
# insignificant; the variable letter is fixed to x.

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<number>\d+(?:\s*/\s*\d+)?)
      | (?P<var>x)
      | (?P<caret>\^)
      | (?P<star>\*)
      | (?P<plus>\+)
      | (?P<minus>[-−])
      | (?P<lparen>\()
      | (?P<rparen>\))
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, expected: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input", tok[2], expected)
        return self.advance()

    def parse(self) -> RationalPoly:
        coeffs: dict[int, Fraction] = {}
        sign = 1
        kind, _, _ = self.peek()
        if kind in ("plus", "minus"):
            sign = -1 if kind == "minus" else 1
            self.advance()
        while True:
            coef, exp = self.parse_term()
            coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coef
            kind, text, pos = self.peek()
            if kind == "end":
                break
            if kind == "plus":
                sign = 1
            elif kind == "minus":
                sign = -1
            else:
                raise ParseError(f"unexpected {text!r}", pos, "'+' or '-'")
            self.advance()
        if not coeffs:
            return ZERO
        top = max(coeffs)
        return RationalPoly([coeffs.get(k, Fraction(0)) for k in range(top + 1)])

    def parse_term(self) -> tuple[Fraction, int]:
        coef: Fraction | None = None
        kind, text, pos = self.peek()
        if kind == "number":
            coef = Fraction(text.replace(" ", ""))
            self.advance()
        elif kind == "lparen":
            self.advance()
            inner_sign = 1
            kind2, _, _ = self.peek()
            if kind2 in ("plus", "minus"):
                inner_sign = -1 if kind2 == "minus" else 1
                self.advance()
            num = self.expect("number", "a rational number")
            coef = inner_sign * Fraction(num[1].replace(" ", ""))
            self.expect("rparen", "')'")
        if self.peek()[0] == "star":
            self.advance()
            self.expect_var_ahead(pos)
        kind, text, pos = self.peek()
        if kind == "var":
            self.advance()
            exp = 1
            if self.peek()[0] == "caret":
                self.advance()
                num = self.expect("number", "a nonnegative integer exponent")
                frac = Fraction(num[1].replace(" ", ""))
                if frac.denominator != 1 or frac < 0:
                    raise ParseError("exponent must be a nonnegative integer", num[2])
                exp = int(frac)
            return (coef if coef is not None else Fraction(1)), exp
        if coef is None:
            raise ParseError(
                f"unexpected {text!r}" if text else "unexpected end of input",
                pos,
                "a coefficient or 'x'",
            )
        return coef, 0

    def expect_var_ahead(self, star_pos: int) -> None:
        if self.peek()[0] != "var":
            raise ParseError("'*' must be followed by 'x'", self.peek()[2], "'x'")


def parse(text: str) -> RationalPoly:
    """Parse polynomial text; raises ParseError with position diagnostics."""
    return _Parser(text).parse()


def _format_coefficient(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


def render(poly: RationalPoly) -> str:
    """Canonical text: descending exponents, explicit '^', no '*'."""
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for k in range(poly.degree, -1, -1):
        c = poly.coefficient(k)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = _format_coefficient(mag)
        else:
            xpart = "x" if k == 1 else f"x^{k}"
            body = xpart if mag == 1 else _format_coefficient(mag) + xpart
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)

