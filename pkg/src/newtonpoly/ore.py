"""Residual polynomials, p-regularity, prime-splitting shapes, index-divisor
certificates, and the Schur-polynomial dynamical-irreducibility pipeline.

The splitting analysis follows the classical single-prime recipe: factor
f mod p, take the phi-adic polygon of f for each repeated irreducible
factor, read one residual polynomial off every positive-slope edge, and --
when all of them are squarefree (p-regularity) -- convert edge data into the
multiset of (ramification, residual degree) pairs for the primes above p.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConstantPolynomial,
    GcdConditionFailed,
    NonMonicPolynomial,
    NotPRegular,
    PhiDividesF,
    PrimeDoesNotDivideM,
    ReducibleModPDecompositionFailure,
    UnitCoefficientViolation,
)
from .ffield import (
    DegreeProfile,
    FpPoly,
    FqContext,
    FqPoly,
    count_monic_irreducibles,
    distinct_degree_profile,
    enumerate_monic_irreducibles,
    fp_context,
)
from .polygon import (
    NewtonPolygon,
    _check_phi_setting,
    _phi_points,
    lower_hull,
    reduce_mod_p,
)
from .polyq import PhiExpansion, RationalPoly
from .theorems import FactorConstraints, TheoremCertificate, Violation, SATISFIED, VIOLATED
from .valuations import is_prime, require_prime, vp, vp_factorial

__all__ = [
    "ResidualDatum",
    "SplittingShape",
    "MonogenityVerdict",
    "SchurSpec",
    "residual_data",
    "is_p_regular",
    "splitting_shape",
    "common_index_divisor",
    "schur_polynomial",
    "truncated_exponential",
    "schur_polygon",
    "schur_dynamical_irreducibility",
]

# factor recovery enumerates monic irreducibles of the colliding degree;
# keep the search space at desk scale
_ENUMERATION_BOUND = 10**6


def _render_fq_element(c: FpPoly, ctx: FqContext) -> str | int:
    if ctx.extension_degree == 1:
        return c.coefficient(0)
    return "+".join(
        (f"{a}" if i == 0 else (f"{a}a^{i}" if i > 1 else f"{a}a"))
        for i, a in enumerate(c.coeffs)
        if a
    ) or "0"


def _render_fq_poly(poly: FqPoly) -> str:
    if poly.is_zero:
        return "0"
    parts = []
    for k in range(poly.degree, -1, -1):
        c = poly.coefficient(k)
        if c.is_zero:
            continue
        shown = _render_fq_element(c, poly.ctx)
        ypart = "" if k == 0 else ("Y" if k == 1 else f"Y^{k}")
        if ypart and shown == 1:
            parts.append(ypart)
        elif ypart:
            parts.append(f"{shown}{ypart}" if isinstance(shown, int) else f"({shown}){ypart}")
        else:
            parts.append(str(shown))
    return "+".join(parts)


@dataclass(frozen=True)
class ResidualDatum:
    """One polygon edge with its residual polynomial over F_p[x]/(phi)."""

    edge_index: int
    slope: Fraction
    t: int  # degree of the residual polynomial = length / denominator(slope)
    residual_poly: FqPoly
    squarefree: bool
    degree_profile: DegreeProfile | None

    def as_dict(self) -> dict:
        return {
            "edge_index": self.edge_index,
            "slope": {"num": self.slope.numerator, "den": self.slope.denominator},
            "t": self.t,
            "residual_poly": _render_fq_poly(self.residual_poly),
            "squarefree": self.squarefree,
            "degree_profile": None
            if self.degree_profile is None
            else [[h, c] for h, c in self.degree_profile],
        }


def _edge_residual(
    expansion: PhiExpansion,
    ctx: FqContext,
    p: int,
    edge_index: int,
    start: tuple[int, int],
    end: tuple[int, int],
) -> ResidualDatum:
    """Residual polynomial of one edge, read off the expansion digits.

    The digit at abscissa x0 + e*j sits at height y0 + l*j when it lies on
    the edge; dividing by p^(y0+lj) and reducing mod (p, phi) gives the
    coefficient of Y^(t-j). Digits strictly above the edge reduce to zero.
    Interior edges are normalized monic (a unit scaling, which changes
    neither squarefreeness nor the factor-degree profile).
    """
    x0, y0 = start
    x1, y1 = end
    slope = Fraction(y1 - y0, x1 - x0)
    e = slope.denominator
    ell = slope.numerator
    t = (x1 - x0) // e
    n = len(expansion.digits) - 1
    coeffs_high_to_low = []
    for j in range(t + 1):
        digit = expansion.digits[n - (x0 + e * j)]
        height = y0 + ell * j
        scaled = digit * Fraction(1, p**height) if height >= 0 else digit * (p ** (-height))
        coeffs_high_to_low.append(ctx.reduce(reduce_mod_p(scaled, p)))
    poly = FqPoly.make(ctx, list(reversed(coeffs_high_to_low))).monic()
    squarefree = poly.is_squarefree()
    profile = distinct_degree_profile(poly) if squarefree else None
    return ResidualDatum(
        edge_index=edge_index,
        slope=slope,
        t=t,
        residual_poly=poly,
        squarefree=squarefree,
        degree_profile=profile,
    )


def residual_data(f: RationalPoly, phi: RationalPoly, p: int) -> list[ResidualDatum]:
    """Residual polynomial of every edge of the phi-polygon of f.

    Requires f monic with p-integral coefficients and f mod p a power of
    phi mod p (the single-factor setting); splitting_shape handles the
    general factorization.
    """
    if not f.is_monic:
        raise NonMonicPolynomial("residual analysis requires a monic polynomial")
    phi_bar = _check_phi_setting(f, phi, p)
    ctx = FqContext(p=p, modulus=phi_bar)
    expansion, points = _phi_points(f, phi, p)
    polygon = lower_hull(p, points)
    return [
        _edge_residual(expansion, ctx, p, i, polygon.vertices[i], polygon.vertices[i + 1])
        for i in range(len(polygon.edges))
    ]


@dataclass(frozen=True)
class SplittingShape:
    """Multiset of (ramification index, residual degree) pairs for pZ_K."""

    prime: int
    p_regular: bool
    entries: tuple[tuple[int, int, int], ...]  # (e, residual degree, count)
    assumed_irreducible: bool = True

    @property
    def degree_sum(self) -> int:
        return sum(e * f * c for e, f, c in self.entries)

    def residual_degree_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, fdeg, count in self.entries:
            out[fdeg] = out.get(fdeg, 0) + count
        return out

    def display(self) -> str:
        factors = []
        index = 1
        for e, _, count in self.entries:
            for _ in range(count):
                factors.append(f"p{index}^{e}" if e > 1 else f"p{index}")
                index += 1
        return f"{self.prime}·Z_K = " + " · ".join(factors)

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "p_regular": self.p_regular,
            "entries": [
                {"ramification": e, "residual_degree": f, "count": c}
                for e, f, c in self.entries
            ],
            "degree_sum": self.degree_sum,
            "display": self.display(),
            "assumed_irreducible": self.assumed_irreducible,
        }


def _distinct_degree_components(g: FpPoly) -> list[tuple[int, FpPoly]]:
    """(degree, product of the irreducible factors of that degree) for squarefree g."""
    p = g.p
    comps = []
    remaining = g.monic()
    x = FpPoly.x(p)
    w = x
    h = 0
    while remaining.degree > 0:
        h += 1
        if remaining.degree < 2 * h:
            comps.append((remaining.degree, remaining))
            break
        w = w.pow_mod(p, remaining)
        g_h = remaining.gcd(w - (x % remaining))
        if g_h.degree > 0:
            comps.append((h, g_h))
            remaining = remaining // g_h
            w = w % remaining
    return comps


def _irreducible_factors(g: FpPoly) -> list[FpPoly]:
    """Deterministic irreducible factorization of a squarefree monic g."""
    factors: list[FpPoly] = []
    for h, component in _distinct_degree_components(g):
        if component.degree == h:
            factors.append(component)
            continue
        if g.p**h > _ENUMERATION_BOUND:
            raise ReducibleModPDecompositionFailure(
                f"cannot split {component.degree // h} same-degree factors of degree {h} "
                f"over F_{g.p} within the enumeration bound"
            )
        remaining = component
        for candidate in enumerate_monic_irreducibles(g.p, h):
            quotient, rem = divmod(remaining, candidate)
            if rem.is_zero:
                factors.append(candidate)
                remaining = quotient
                if remaining.degree < h:
                    break
        if remaining.degree != 0:
            raise ReducibleModPDecompositionFailure("factor enumeration did not terminate")
    return factors


def _lift_monic(phi_bar: FpPoly) -> RationalPoly:
    # the deterministic lift: representatives in [0, p)
    return RationalPoly(list(phi_bar.coeffs))


def _analyze_splitting(f: RationalPoly, p: int) -> tuple[bool, list[tuple[int, int, int]], str]:
    require_prime(p)
    if f.degree < 1:
        raise ConstantPolynomial("splitting analysis requires a nonconstant polynomial")
    if not f.is_monic:
        raise NonMonicPolynomial("splitting analysis requires a monic polynomial")
    f_bar = reduce_mod_p(f, p)
    entries: Counter[tuple[int, int]] = Counter()
    for component, multiplicity in f_bar.squarefree_decomposition():
        if multiplicity == 1:
            # an irreducible factor to the first power lifts to an unramified
            # prime of matching residual degree; no polygon needed, so the
            # factors themselves are never constructed
            fq = FqPoly.make(fp_context(p), [FpPoly.make(p, (c,)) for c in component.coeffs])
            for h, count in distinct_degree_profile(fq):
                entries[(1, h)] += count
            continue
        for phi_bar in _irreducible_factors(component):
            phi = _lift_monic(phi_bar)
            if f.monic_divmod(phi)[1].is_zero:
                # only possible when f is reducible over Q, contradicting the
                # declared input assumption
                raise PhiDividesF(
                    f"the lifted factor {phi!r} divides f exactly; f is not irreducible over Q"
                )
            ctx = FqContext(p=p, modulus=phi_bar)
            expansion, points = _phi_points(f, phi, p)
            polygon = lower_hull(p, points)
            principal_length = 0
            for i, edge in enumerate(polygon.edges):
                if edge.slope <= 0:
                    continue
                datum = _edge_residual(
                    expansion, ctx, p, i, polygon.vertices[i], polygon.vertices[i + 1]
                )
                principal_length += edge.length
                if not datum.squarefree:
                    return (
                        False,
                        [],
                        f"residual polynomial {_render_fq_poly(datum.residual_poly)} of the "
                        f"slope-{datum.slope} edge (phi degree {phi_bar.degree}) has a repeated root",
                    )
                e_ram = datum.slope.denominator
                for h, count in datum.degree_profile:
                    entries[(e_ram, phi_bar.degree * h)] += count
            assert principal_length == multiplicity, "principal polygon length mismatch"
    ordered = tuple(
        (e, fdeg, count)
        for (e, fdeg), count in sorted(entries.items(), key=lambda kv: (-kv[0][0], kv[0][1]))
    )
    return True, list(ordered), ""


def is_p_regular(f: RationalPoly, p: int) -> bool:
    """True when every residual polynomial of every (phi, edge) is squarefree."""
    regular, _, _ = _analyze_splitting(f, p)
    return regular


def splitting_shape(f: RationalPoly, p: int) -> SplittingShape:
    """Shape of pZ_K for K generated by a root of f (f assumed irreducible).

    Irreducibility over Q is an input assertion recorded on the result; a
    p^r-Dumas certificate from classify_purity can discharge it separately.
    Raises NotPRegular rather than returning a partial shape: the splitting
    theorem gives no conclusion in the irregular case.
    """
    regular, entries, detail = _analyze_splitting(f, p)
    if not regular:
        raise NotPRegular(p, detail)
    shape = SplittingShape(prime=p, p_regular=True, entries=tuple(entries))
    assert shape.degree_sum == f.degree, "fundamental identity sum(e*f) = deg f failed"
    return shape


@dataclass(frozen=True)
class MonogenityVerdict:
    """Common-index-divisor test: more degree-h primes above p than monic
    irreducibles of degree h over F_p forces p | i(K), hence non-monogenity."""

    prime: int
    P_counts: dict[int, int]
    N_counts: dict[int, int]
    common_index_divisor: bool
    witness_h: int | None

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "P_counts": {str(h): c for h, c in sorted(self.P_counts.items())},
            "N_counts": {str(h): c for h, c in sorted(self.N_counts.items())},
            "common_index_divisor": self.common_index_divisor,
            "witness_h": self.witness_h,
        }


def common_index_divisor(f: RationalPoly, p: int) -> MonogenityVerdict:
    shape = splitting_shape(f, p)
    p_counts = shape.residual_degree_counts()
    n_counts = {h: count_monic_irreducibles(p, h) for h in p_counts}
    witness = None
    for h in sorted(p_counts):
        if p_counts[h] > n_counts[h]:
            witness = h
            break
    return MonogenityVerdict(
        prime=p,
        P_counts=p_counts,
        N_counts=n_counts,
        common_index_divisor=witness is not None,
        witness_h=witness,
    )


# -- Schur polynomials ------------------------------------------------------


@dataclass(frozen=True)
class SchurSpec:
    """Degree m, unit end coefficients, and a chosen prime divisor of m."""

    m: int
    p: int
    b_coeffs: tuple[int, ...]

    @staticmethod
    def create(m: int, p: int, b_coeffs=None) -> "SchurSpec":
        if m < 1:
            raise ValueError("m must be positive")
        if b_coeffs is None:
            b_coeffs = (1,) * (m + 1)
        b_coeffs = tuple(int(b) for b in b_coeffs)
        if len(b_coeffs) != m + 1:
            raise ValueError(f"expected {m + 1} coefficients, got {len(b_coeffs)}")
        if abs(b_coeffs[0]) != 1 or abs(b_coeffs[m]) != 1:
            raise UnitCoefficientViolation("|b_0| = |b_m| = 1 is required")
        require_prime(p)
        if m % p != 0:
            raise PrimeDoesNotDivideM(p, m)
        return SchurSpec(m=m, p=p, b_coeffs=b_coeffs)

    @staticmethod
    def exponential(m: int, p: int) -> "SchurSpec":
        return SchurSpec.create(m, p)

    @property
    def base_p_digits(self) -> tuple[tuple[int, int], ...]:
        """Nonzero base-p digits of m as (digit, exponent), exponent ascending."""
        digits = []
        value = self.m
        exponent = 0
        while value:
            d = value % self.p
            if d:
                digits.append((d, exponent))
            value //= self.p
            exponent += 1
        return tuple(digits)

    @property
    def z_partial_sums(self) -> tuple[int, ...]:
        sums = []
        acc = 0
        for digit, exponent in self.base_p_digits:
            acc += digit * self.p**exponent
            sums.append(acc)
        return tuple(sums)

    def check_gcd_condition(self) -> None:
        for i in range(1, self.m):
            if math.gcd(self.b_coeffs[i], self.m) != 1:
                raise GcdConditionFailed(i, self.b_coeffs[i], self.m)


def schur_polynomial(spec: SchurSpec) -> RationalPoly:
    """sum of b_i x^i / i! with exact rational coefficients."""
    return RationalPoly(
        [Fraction(b, math.factorial(i)) for i, b in enumerate(spec.b_coeffs)]
    )


def truncated_exponential(m: int) -> RationalPoly:
    """The all-ones case: 1 + x + x^2/2! + ... + x^m/m!."""
    return RationalPoly([Fraction(1, math.factorial(i)) for i in range(m + 1)])


def schur_polygon(spec: SchurSpec) -> NewtonPolygon:
    """Polygon of the Schur polynomial from the factorial-valuation formula.

    Vertices run from (0, -v_p(m!)) through (z_j, -v_p((m-z_j)!)) to (m, 0),
    where the z_j are the partial sums of the base-p digits of m; segment j
    has slope (p^(m_j) - 1) / (p^(m_j) (p - 1)).
    """
    spec.check_gcd_condition()
    p, m = spec.p, spec.m
    vertices = [(0, -vp_factorial(m, p))]
    for z in spec.z_partial_sums:
        vertices.append((z, -vp_factorial(m - z, p)))
    return NewtonPolygon.from_vertices(p, vertices)


def schur_slope_formula(spec: SchurSpec) -> tuple[Fraction, ...]:
    p = spec.p
    return tuple(
        Fraction(p**exp - 1, p**exp * (p - 1)) for _, exp in spec.base_p_digits
    )


def schur_dynamical_irreducibility(f: RationalPoly, spec: SchurSpec) -> TheoremCertificate:
    """Certificate that G_m(f^n) is irreducible for every n >= 0.

    Checks, for every prime q dividing m: v_q(lead f) = 0 and f congruent to
    its leading monomial mod q; plus gcd(deg f, m!) = 1 and gcd(b_i, m) = 1
    for interior coefficients. The polygon of G_m(f^n) then stretches with
    slope denominators divisible by (deg f)^n * q^(v_q(m)), which forces
    every irreducible factor to have full degree (deg f)^n * m.
    """
    if f.degree < 1:
        raise ConstantPolynomial("inner polynomial must be nonconstant")
    d = f.degree
    m = spec.m
    violations: list[Violation] = []
    prime_divisors = [q for q in range(2, m + 1) if m % q == 0 and is_prime(q)]
    for q in prime_divisors:
        if vp(f.leading_coefficient, q) != 0:
            violations.append(
                Violation("LeadingCoefficientNotUnit", f"v_{q}(lead f) != 0")
            )
            continue
        for i in range(d):
            c = f.coefficient(i)
            if c and not vp(c, q) >= 1:
                violations.append(
                    Violation(
                        "NotXPowerModP",
                        f"coefficient of x^{i} is a unit mod {q}; f is not congruent to "
                        f"a_d x^{d} mod {q}",
                    )
                )
                break
    if math.gcd(d, math.factorial(m)) != 1:
        violations.append(
            Violation(
                "DegreeNotCoprimeToMFactorial",
                f"gcd({d}, {m}!) = {math.gcd(d, math.factorial(m))} != 1",
            )
        )
    for i in range(1, m):
        if math.gcd(spec.b_coeffs[i], m) != 1:
            violations.append(
                Violation("CoefficientNotCoprimeToM", f"gcd(b_{i}, {m}) != 1 for b_{i} = {spec.b_coeffs[i]}")
            )
            break
    if violations:
        return TheoremCertificate(
            theorem="schur_dynamical_irreducibility",
            verdict=VIOLATED,
            violations=tuple(violations),
            parameters={"m": m, "p": spec.p, "d": d},
        )
    base = schur_polygon(spec)
    return TheoremCertificate(
        theorem="schur_dynamical_irreducibility",
        verdict=SATISFIED,
        predicted_polygon=base.horizontal_stretch(d),
        factor_bound=FactorConstraints(
            max_factor_count=1, admissible_degree_summands=(), per_edge_degree_divisor=()
        ),
        parameters={
            "m": m,
            "p": spec.p,
            "d": d,
            "irreducible_for_all_n": True,
            "factor_degree_divisor": f"{d}^n * {m}",
        },
        notes=(
            f"checked the leading-monomial congruence at every prime divisor of m ({prime_divisors}); "
            f"slope denominators of the stretched polygon are divisible by {d}^n * q^(v_q({m})) "
            "for each such q, so any irreducible factor has full degree",
        ),
        base_polygon=base,
        stretch_per_level=d,
        prediction_kind="compose",
    )
