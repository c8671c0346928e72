"""Newton polygons as lower convex hulls of valuation points.

All geometry is exact: vertices are integer lattice points, slopes are
Fractions, and hull decisions are integer cross-product signs. The vertex
list stores only strict hull vertices; lattice points interior to an edge
are carried as a count, which is what the factor-counting arguments consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConstantPolynomial,
    NonIntegralCoefficients,
    NonMonicBase,
    PhiDividesF,
    PhiNotIrreducibleModP,
    ResidueNotPhiPower,
    ZeroConstantTerm,
)
from .ffield import FpPoly
from .polyq import PhiExpansion, RationalPoly, phi_expand
from .valuations import INFINITY, Infinity, Valuation, require_prime, vp

__all__ = [
    "Edge",
    "NewtonPolygon",
    "FactorConstraints",
    "newton_polygon",
    "phi_newton_polygon",
    "dumas_merge",
    "factor_constraints",
    "first_edge_slope",
    "lower_hull",
]


@dataclass(frozen=True)
class Edge:
    slope: Fraction
    length: int  # horizontal projection
    lattice_points: int  # lattice points strictly interior to the edge

    @property
    def rise(self) -> int:
        rise = self.slope * self.length
        assert rise.denominator == 1
        return rise.numerator

    def as_dict(self) -> dict:
        return {
            "slope": {"num": self.slope.numerator, "den": self.slope.denominator},
            "length": self.length,
            "lattice_points": self.lattice_points,
        }


def _edge_between(a: tuple[int, int], b: tuple[int, int]) -> Edge:
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    return Edge(slope=Fraction(dy, dx), length=dx, lattice_points=math.gcd(dx, abs(dy)) - 1)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower polygon: vertices left to right, edge slopes strictly increasing."""

    prime: int
    vertices: tuple[tuple[int, int], ...]
    edges: tuple[Edge, ...]
    # pre-merge (slope, length) translates, kept by dumas_merge for test
    # transparency; not part of polygon identity
    merged_from: tuple[tuple[Fraction, int], ...] | None = field(
        default=None, compare=False, repr=False
    )

    @staticmethod
    def from_vertices(prime: int, vertices) -> "NewtonPolygon":
        vs = [(int(x), int(y)) for x, y in vertices]
        if not vs:
            raise ValueError("a polygon needs at least one vertex")
        edges = tuple(_edge_between(vs[i], vs[i + 1]) for i in range(len(vs) - 1))
        for e0, e1 in zip(edges, edges[1:]):
            if not e0.slope < e1.slope:
                raise ValueError("vertex chain is not strictly convex")
        return NewtonPolygon(prime=prime, vertices=tuple(vs), edges=edges)

    @property
    def origin_height(self) -> int:
        return self.vertices[0][1]

    @property
    def total_length(self) -> int:
        return self.vertices[-1][0] - self.vertices[0][0]

    @property
    def total_height(self) -> int:
        return self.vertices[-1][1] - self.vertices[0][1]

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(e.slope for e in self.edges)

    def height_at(self, x: Fraction | int) -> Fraction:
        """Exact height of the polygon boundary at abscissa x."""
        x = Fraction(x)
        if not self.vertices[0][0] <= x <= self.vertices[-1][0]:
            raise ValueError(f"abscissa {x} outside polygon span")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x <= x1:
                return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
        return Fraction(self.vertices[-1][1])

    def on_or_above(self, x: int, y: Valuation) -> bool:
        if isinstance(y, Infinity):
            return True
        return Fraction(y) >= self.height_at(x)

    def horizontal_stretch(self, factor: int) -> "NewtonPolygon":
        """Scale abscissas by a positive integer; heights are unchanged."""
        if factor < 1:
            raise ValueError("stretch factor must be positive")
        return NewtonPolygon.from_vertices(
            self.prime, [(x * factor, y) for x, y in self.vertices]
        )

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "origin": [self.vertices[0][0], self.vertices[0][1]],
            "vertices": [[x, y] for x, y in self.vertices],
            "edges": [e.as_dict() for e in self.edges],
        }

    def arrow_text(self) -> str:
        return " -> ".join(f"({x},{y})" for x, y in self.vertices)


def lower_hull(prime: int, points: list[tuple[int, int]]) -> NewtonPolygon:
    """Monotone scan over points with distinct abscissas; collinear merged."""
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # pop unless the chain turns strictly left at (x1, y1)
            if (x1 - x0) * (pt[1] - y0) - (y1 - y0) * (pt[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return NewtonPolygon.from_vertices(prime, hull)


def _valuation_points(poly: RationalPoly, p: int) -> list[tuple[int, int]]:
    # zero coefficients have valuation Infinity and are simply skipped
    d = poly.degree
    points = []
    for i, c in enumerate(poly.coefficients):
        if c:
            v = vp(c, p)
            points.append((d - i, v))
    return points


def newton_polygon(
    poly: RationalPoly, p: int, *, strip_zero_root: bool = False
) -> NewtonPolygon:
    """Lower hull of (deg f - i, v_p(a_i)) over the nonzero coefficients.

    Polynomials divisible by x are rejected with the exact power of x so the
    caller can strip it deliberately (or pass strip_zero_root=True).
    """
    require_prime(p)
    if poly.degree < 1:
        raise ConstantPolynomial("Newton polygon requires a nonconstant polynomial")
    root_power = 0
    while poly.coefficient(root_power) == 0:
        root_power += 1
    if root_power:
        if not strip_zero_root:
            raise ZeroConstantTerm(root_power)
        poly = RationalPoly(poly.coefficients[root_power:])
        if poly.degree < 1:
            raise ConstantPolynomial("only a monomial remains after stripping x^k")
    return lower_hull(p, _valuation_points(poly, p))


def first_edge_slope(poly: RationalPoly, p: int) -> Fraction | Infinity:
    """Slope of the first edge of NP_p(f); Infinity for a monomial.

    Unlike newton_polygon this tolerates f(0) = 0: missing points are
    skipped, and a single remaining point means there is no edge at all.
    """
    require_prime(p)
    points = _valuation_points(poly, p)
    if len(points) <= 1:
        return INFINITY
    hull = lower_hull(p, points)
    return hull.edges[0].slope


def reduce_mod_p(poly: RationalPoly, p: int) -> FpPoly:
    """Reduce a p-adically integral rational polynomial modulo p."""
    coeffs = []
    for i, c in enumerate(poly.coefficients):
        if c.denominator % p == 0:
            raise NonIntegralCoefficients(p, i, c)
        coeffs.append(c.numerator * pow(c.denominator, -1, p) % p)
    return FpPoly.make(p, coeffs)


def digit_valuation(digit: RationalPoly, p: int) -> Valuation:
    """v_{p,x} of an expansion digit: the minimum v_p over its coefficients."""
    if digit.is_zero:
        return INFINITY
    return min(vp(c, p) for c in digit.coefficients if c)


def _phi_points(
    poly: RationalPoly, phi: RationalPoly, p: int
) -> tuple[PhiExpansion, list[tuple[int, int]]]:
    expansion = phi_expand(poly, phi)
    n = len(expansion.digits) - 1
    points = []
    for j, digit in enumerate(expansion.digits):
        v = digit_valuation(digit, p)
        if not isinstance(v, Infinity):
            points.append((n - j, v))
    return expansion, points


def _check_phi_setting(poly: RationalPoly, phi: RationalPoly, p: int) -> FpPoly:
    """Validate the (f, phi, p) preconditions; returns phi mod p."""
    require_prime(p)
    if phi.degree < 1 or not phi.is_monic:
        raise NonMonicBase("phi must be monic of degree >= 1")
    phi_bar = reduce_mod_p(phi, p)
    if phi_bar.degree != phi.degree or not phi_bar.is_irreducible():
        raise PhiNotIrreducibleModP(f"{phi!r} is not irreducible modulo {p}")
    f_bar = reduce_mod_p(poly, p)
    if f_bar.is_zero:
        raise ResidueNotPhiPower("f vanishes modulo p")
    power = 0
    current = f_bar
    while current.degree >= phi_bar.degree:
        quotient, rem = divmod(current, phi_bar)
        if not rem.is_zero:
            raise ResidueNotPhiPower("f mod p is not a power of phi mod p")
        current = quotient
        power += 1
    if current.degree != 0 or power == 0:
        raise ResidueNotPhiPower("f mod p is not a positive power of phi mod p")
    _, rem = poly.monic_divmod(phi)
    if rem.is_zero:
        raise PhiDividesF("phi divides f exactly")
    return phi_bar


def phi_newton_polygon(poly: RationalPoly, phi: RationalPoly, p: int) -> NewtonPolygon:
    """phi-adic Newton polygon: hull of (i, v_{p,x}(digit_{n-i})).

    For phi = x this coincides with newton_polygon by construction.
    """
    _check_phi_setting(poly, phi, p)
    _, points = _phi_points(poly, phi, p)
    return lower_hull(p, points)


def dumas_merge(left: NewtonPolygon, right: NewtonPolygon, k: int) -> NewtonPolygon:
    """Product polygon: slope-sorted translates of both edge sets from (0, k).

    k is the valuation of the leading coefficient of the product, which the
    caller supplies. Equal-slope runs coalesce into a single edge; the
    pre-merge translates stay available on the result for inspection.
    """
    if left.prime != right.prime:
        raise ValueError("cannot merge polygons taken at different primes")
    translates = sorted(
        [(e.slope, e.length) for e in left.edges] + [(e.slope, e.length) for e in right.edges],
        key=lambda t: t[0],
    )
    vertices = [(0, k)]
    i = 0
    while i < len(translates):
        slope = translates[i][0]
        length = 0
        while i < len(translates) and translates[i][0] == slope:
            length += translates[i][1]
            i += 1
        x, y = vertices[-1]
        rise = slope * length
        assert rise.denominator == 1  # every translate has a lattice rise
        vertices.append((x + length, y + rise.numerator))
    polygon = NewtonPolygon.from_vertices(left.prime, vertices)
    return NewtonPolygon(
        prime=polygon.prime,
        vertices=polygon.vertices,
        edges=polygon.edges,
        merged_from=tuple(translates),
    )


@dataclass(frozen=True)
class FactorConstraints:
    """What the polygon alone forces about irreducible factors over Q.

    Minimal lattice segments are the atoms of any Dumas decomposition: each
    factor consumes at least one, and factor degrees are sums of their spans.
    """

    max_factor_count: int
    admissible_degree_summands: tuple[int, ...]
    per_edge_degree_divisor: tuple[int, ...]

    @property
    def min_factor_degree(self) -> int:
        return min(self.admissible_degree_summands) if self.admissible_degree_summands else 0

    def as_dict(self) -> dict:
        return {
            "max_factor_count": self.max_factor_count,
            "admissible_degree_summands": list(self.admissible_degree_summands),
            "per_edge_degree_divisor": list(self.per_edge_degree_divisor),
        }


def factor_constraints(polygon: NewtonPolygon) -> FactorConstraints:
    """Factor-count and factor-degree constraints from lattice structure."""
    summands: list[int] = []
    divisors: list[int] = []
    for edge in polygon.edges:
        den = edge.slope.denominator
        divisors.append(den)
        summands.extend([den] * (edge.length // den))
    return FactorConstraints(
        max_factor_count=len(summands) if summands else 1,
        admissible_degree_summands=tuple(summands),
        per_edge_degree_divisor=tuple(divisors),
    )
