"""Random instance generation and the hypothesis-boundary counterexample sweep.

The generators are polygon-first: they draw a convex vertex chain, realize
it as coefficients, and only then bolt on the inner polynomial so the
theorem hypotheses hold by construction (with rejection for the few
conditions that are cheaper to test than to engineer). The boundary search
perturbs Satisfied instances across the exact hypothesis boundary and keeps
the ones where the certificate flips to Violated and the literal
composition polygon stops matching the stretch.
"""

from __future__ import annotations

import math
from fractions import Fraction
from random import Random

from .errors import ZeroConstantTerm
from .polygon import newton_polygon
from .polyq import RationalPoly, render
from .theorems import (
    check_composition,
    check_composition_steep,
    check_iterate,
    verify_prediction,
)
from .valuations import vp

__all__ = [
    "random_composition_instance",
    "random_iterate_instance",
    "random_steep_instance",
    "boundary_search",
]


def _unit(rng: Random, p: int) -> int:
    while True:
        u = rng.randint(1, 9)
        if u % p:
            return u * rng.choice((1, -1))


def _convex_chain(rng: Random, e: int, t: int, *, min_first_rise: int = 1) -> list[tuple[int, int]] | None:
    """Vertex chain (0,0) .. (e, r_t) with strictly increasing edge slopes."""
    if t > e:
        return None
    xs = sorted(rng.sample(range(1, e), t - 1)) + [e] if t > 1 else [e]
    vertices = [(0, 0)]
    prev_slope = None
    y = 0
    x_prev = 0
    for x in xs:
        span = x - x_prev
        rise = rng.randint(min_first_rise if prev_slope is None else 1, 4)
        slope = Fraction(rise, span)
        if prev_slope is not None and not slope > prev_slope:
            return None
        vertices.append((x, y + rise))
        prev_slope = slope
        y += rise
        x_prev = x
    return vertices


def _poly_from_chain(rng: Random, p: int, vertices: list[tuple[int, int]]) -> RationalPoly:
    """Coefficients realizing the chain exactly; interior points stay above."""
    e = vertices[-1][0]
    heights: dict[int, int] = {x: y for x, y in vertices}
    coeffs = [Fraction(0)] * (e + 1)
    for x, y in vertices:
        coeffs[e - x] = Fraction(_unit(rng, p) * p**y)

    def hull_height(x: int) -> Fraction:
        for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
            if x0 <= x <= x1:
                return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
        return Fraction(vertices[-1][1])

    for x in range(1, e):
        if x in heights:
            continue
        if rng.random() < 0.4:
            continue  # zero coefficient: the point simply does not exist
        v = math.ceil(hull_height(x)) + rng.randint(0, 2)
        coeffs[e - x] = Fraction(_unit(rng, p) * p**v)
    return RationalPoly(coeffs)


def _inner_poly(rng: Random, p: int, d: int, lambda_min: Fraction) -> RationalPoly:
    """Monic-unit-lead f whose first polygon edge has slope >= lambda_min."""
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(_unit(rng, p))
    for i in range(d):
        if i and rng.random() < 0.35:
            continue
        v = math.ceil(lambda_min * (d - i)) + rng.randint(0, 2)
        coeffs[i] = Fraction(_unit(rng, p) * p**v)
    return RationalPoly(coeffs)


def random_composition_instance(
    rng: Random, p: int, *, max_e: int = 5, max_d: int = 4
) -> tuple[RationalPoly, RationalPoly]:
    """A (g, f) pair Satisfied under the positive-slope composition check."""
    while True:
        e = rng.randint(2, max_e)
        t = rng.randint(1, min(3, e))
        d = rng.randint(2, max_d)
        chain = _convex_chain(rng, e, t)
        if chain is None:
            continue
        lambda_1 = Fraction(chain[1][1] - chain[0][1], chain[1][0] - chain[0][0])
        if not chain[-1][1] < lambda_1 * (d + e - 1):
            continue  # keep to the strict branch; equality cases are engineered in tests
        g = _poly_from_chain(rng, p, chain)
        f = _inner_poly(rng, p, d, lambda_1)
        cert = check_composition(g, f, p)
        if cert.satisfied:
            return g, f


def random_iterate_instance(rng: Random, p: int, *, max_d: int = 5) -> RationalPoly:
    """An f Satisfied under the iterate check (non-strict bound allowed)."""
    while True:
        d = rng.randint(2, max_d)
        t = rng.randint(1, min(3, d))
        chain = _convex_chain(rng, d, t)
        if chain is None:
            continue
        lambda_1 = Fraction(chain[1][1], chain[1][0])
        if not chain[-1][1] <= lambda_1 * (2 * d - 1):
            continue
        f = _poly_from_chain(rng, p, chain)
        if check_iterate(f, p).satisfied:
            return f


def random_steep_instance(
    rng: Random, p: int, *, max_e: int = 4, max_d: int = 4
) -> tuple[RationalPoly, RationalPoly]:
    """A (g, f) pair Satisfied under the signed-slope (steep inner) check.

    g may carry negative valuations, so its polygon can fall before it rises.
    """
    while True:
        e = rng.randint(1, max_e)
        coeffs = [Fraction(0)] * (e + 1)
        for i in range(e + 1):
            if 0 < i < e and rng.random() < 0.3:
                continue
            v = rng.randint(-3, 3)
            coeffs[i] = Fraction(_unit(rng, p)) * Fraction(p) ** v
        g = RationalPoly(coeffs)
        if g.degree != e or g.constant_term == 0:
            continue
        slopes = newton_polygon(g, p).slopes
        u = 1 + math.floor(max(abs(s) for s in slopes))
        d = rng.randint(2, max_d)
        betas = [b for b in range(d, 0, -1) if math.gcd(b, u) == 1]
        if not betas:
            continue
        beta = rng.choice(betas)
        coeffs_f = [Fraction(0)] * (d + 1)
        coeffs_f[d] = Fraction(_unit(rng, p))
        for i in range(d):
            if i and rng.random() < 0.35:
                continue
            v = math.ceil(Fraction(u, beta) * (d - i)) + rng.randint(0, 1)
            coeffs_f[i] = Fraction(_unit(rng, p) * p**v)
        f = RationalPoly(coeffs_f)
        cert = check_composition_steep(g, f, p)
        if cert.satisfied:
            return g, f


def _bump_constant(g: RationalPoly, p: int, target_rt: int) -> RationalPoly:
    """Raise v_p(g(0)) to target_rt, crossing the constant-valuation bound."""
    current = vp(g.constant_term, p)
    coeffs = list(g.coefficients)
    coeffs[0] = coeffs[0] * p ** (target_rt - current)
    return RationalPoly(coeffs)


def _flatten_inner(f: RationalPoly, p: int, lambda_1: Fraction, rng: Random) -> RationalPoly:
    """Insert a coefficient below the slope-lambda_1 line: lambda < lambda_1."""
    d = f.degree
    j = rng.randrange(1, d)
    v = max(0, math.ceil(lambda_1 * (d - j)) - 1)
    coeffs = list(f.coefficients) + [Fraction(0)] * (d + 1 - len(f.coefficients))
    coeffs[j] = Fraction(_unit(rng, p) * p**v)
    return RationalPoly(coeffs)


def boundary_search(seed: int, count: int, primes: tuple[int, ...] = (2, 3, 5)) -> dict:
    """Sweep perturbed instances near the hypothesis boundaries.

    Each instance gets its own derived seed, so results do not depend on
    evaluation order; identical (seed, count, primes) give identical output.
    """
    found = []
    for index in range(count):
        rng = Random(seed * 1_000_003 + index)
        p = rng.choice(list(primes))
        g, f = random_composition_instance(rng, p, max_e=4, max_d=3)
        base = newton_polygon(g, p)
        lambda_1 = base.slopes[0]
        e, d = g.degree, f.degree
        kind = rng.choice(("constant_bump", "slope_drop"))
        if kind == "constant_bump":
            bound = lambda_1 * (d + e - 1)
            g = _bump_constant(g, p, math.floor(bound) + 1)
        else:
            f = _flatten_inner(f, p, lambda_1, rng)
        cert = check_composition(g, f, p)
        if cert.satisfied:
            continue  # the perturbation landed inside the hypotheses; not a boundary case
        try:
            report = verify_prediction(g, f, p, 1)
        except ZeroConstantTerm:
            continue  # f(0) hit a root of g; the composed polygon is undefined
        if report.match:
            continue  # violated hypotheses but the stretch happened to hold
        found.append(
            {
                "index": index,
                "prime": p,
                "perturbation": kind,
                "g": render(g),
                "f": render(f),
                "violations": [v.as_dict() for v in cert.violations],
                "first_mismatch": report.first_mismatch,
            }
        )
    return {
        "seed": seed,
        "count": count,
        "primes": list(primes),
        "found": found,
        "found_count": len(found),
    }
