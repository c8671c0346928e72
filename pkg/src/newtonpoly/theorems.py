"""Hypothesis checkers, polygon predictors and certificates for composition
and iteration, plus the brute-force oracle that verifies every prediction.

A certificate either carries a predicted polygon (all hypotheses hold) or a
list of named violations and no prediction: predictions are only claimed
under the hypotheses, because the worked counterexamples show they are wrong
outside them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConstantPolynomial,
    HypothesesNotSatisfied,
    ZeroConstantTerm,
)
from .polygon import NewtonPolygon, FactorConstraints, first_edge_slope, newton_polygon
from .polyq import DEFAULT_DEGREE_CAP, RationalPoly, compose, iterate
from .valuations import Infinity, Valuation, vp

__all__ = [
    "Violation",
    "CompositionHypotheses",
    "TheoremCertificate",
    "PurityClass",
    "ComparisonReport",
    "check_composition",
    "check_iterate",
    "check_composition_steep",
    "check_pure_composition",
    "classify_purity",
    "eventual_stability",
    "best_certificate",
    "predict_composition",
    "predict_iterate",
    "verify_prediction",
    "vertex_valuation_bound",
    "telescoping_identity",
    "constant_transfer_bound",
    "constant_term_valuation_stable",
]

SATISFIED = "satisfied"
VIOLATED = "violated"


@dataclass(frozen=True)
class Violation:
    name: str
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "detail": self.detail}


@dataclass(frozen=True)
class CompositionHypotheses:
    """Vertex data of the outer polygon plus the inner first-edge slope."""

    e: int
    d: int
    m_list: tuple[int, ...]  # m_0 = e down to m_t = 0
    r_list: tuple[int, ...]  # absolute v_p(b_{m_i}); r_list[0] = v_p(b_e)
    lambdas: tuple[Fraction, ...]
    lambda_f: Fraction | Infinity | None
    branch: str | None

    @property
    def t(self) -> int:
        return len(self.lambdas)

    def as_dict(self) -> dict:
        return {
            "e": self.e,
            "d": self.d,
            "m_list": list(self.m_list),
            "r_list": list(self.r_list),
            "lambdas": [[s.numerator, s.denominator] for s in self.lambdas],
            "lambda_f": None
            if self.lambda_f is None
            else ("infinity" if isinstance(self.lambda_f, Infinity) else [self.lambda_f.numerator, self.lambda_f.denominator]),
            "branch": self.branch,
        }


# prediction_kind controls how the base polygon scales with the level n:
#   "compose": g.f^n stretches the polygon of g by d^n
#   "iterate": f^n stretches the polygon of f by d^(n-1)
@dataclass(frozen=True)
class TheoremCertificate:
    theorem: str
    verdict: str
    violations: tuple[Violation, ...] = ()
    predicted_polygon: NewtonPolygon | None = None
    factor_bound: FactorConstraints | None = None
    parameters: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    hypotheses: CompositionHypotheses | None = None
    base_polygon: NewtonPolygon | None = field(default=None, repr=False)
    stretch_per_level: int | None = field(default=None, repr=False)
    prediction_kind: str = "compose"

    @property
    def satisfied(self) -> bool:
        return self.verdict == SATISFIED

    def predict(self, n: int) -> NewtonPolygon:
        """Predicted polygon at iteration level n; no composition happens."""
        if not self.satisfied:
            raise HypothesesNotSatisfied(self.violations)
        if self.base_polygon is None or self.stretch_per_level is None:
            raise HypothesesNotSatisfied(
                [Violation("NoPrediction", f"certificate {self.theorem} carries no polygon prediction")]
            )
        if n < 0 or (self.prediction_kind == "iterate" and n < 1):
            raise ValueError("iteration level out of range for this certificate")
        exponent = n if self.prediction_kind == "compose" else n - 1
        factor = self.stretch_per_level**exponent
        return self.base_polygon.horizontal_stretch(factor) if factor > 1 else self.base_polygon

    def as_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "violations": [v.as_dict() for v in self.violations],
            "parameters": dict(self.parameters),
        }
        if self.predicted_polygon is not None:
            out["predicted_polygon"] = self.predicted_polygon.as_dict()
        if self.factor_bound is not None:
            out["factor_bound"] = self.factor_bound.as_dict()
        if self.notes:
            out["notes"] = list(self.notes)
        if self.hypotheses is not None:
            out["hypotheses"] = self.hypotheses.as_dict()
        return out


def _format_slope(s: Fraction | Infinity) -> str:
    if isinstance(s, Infinity):
        return "infinity"
    return f"{s.numerator}/{s.denominator}" if s.denominator != 1 else str(s.numerator)


def _require_nonzero_constant(poly: RationalPoly) -> None:
    if poly.constant_term == 0:
        power = 0
        while poly.coefficient(power) == 0 and power <= max(poly.degree, 0):
            power += 1
        raise ZeroConstantTerm(power)


def _outer_vertex_data(polygon: NewtonPolygon) -> tuple[tuple[int, ...], tuple[int, ...]]:
    e = polygon.vertices[-1][0]
    m_list = tuple(e - x for x, _ in polygon.vertices)
    r_list = tuple(y for _, y in polygon.vertices)
    return m_list, r_list


def check_composition(g: RationalPoly, f: RationalPoly, p: int) -> TheoremCertificate:
    """Certificate for the positive-slope composition theorem.

    The polygon of g.f^n is the polygon of g stretched horizontally by
    deg(f)^n provided: the inner first-edge slope is at least the outer
    first slope, the inner leading coefficient is a p-adic unit, p divides
    every lower coefficient of g (after unit normalization of the leading
    coefficient), and v_p(g(0)) stays below lambda_1 * (d + e - 1), with an
    equality escape through v_p(f(0)) > d*lambda or lambda > lambda_1.
    """
    _require_nonzero_constant(g)
    if f.degree < 1:
        raise ConstantPolynomial("inner polynomial must be nonconstant")
    np_g = newton_polygon(g, p)
    e = g.degree
    d = f.degree
    m_list, r_list = _outer_vertex_data(np_g)
    lambdas = np_g.slopes
    v_lead = np_g.origin_height  # v_p of the leading coefficient of g
    violations: list[Violation] = []
    notes: list[str] = []
    if v_lead != 0:
        notes.append(
            f"leading coefficient has v_p = {v_lead}; hypotheses are checked on the "
            f"p^{-v_lead}-normalized polynomial and the predicted polygon keeps the original heights"
        )
    for i, c in enumerate(g.coefficients[:-1]):
        if c and vp(c, p) - v_lead < 1:
            violations.append(
                Violation(
                    "InteriorCoefficientNotDivisible",
                    f"v_p(b_{i}) - v_p(b_{e}) = {vp(c, p) - v_lead} < 1",
                )
            )
            break
    if vp(f.leading_coefficient, p) != 0:
        violations.append(
            Violation(
                "LeadingCoefficientNotUnit",
                f"v_p(lead f) = {vp(f.leading_coefficient, p)} != 0",
            )
        )
    lambda_f = first_edge_slope(f, p)
    branch: str | None = None
    if not violations:
        lambda_1 = lambdas[0]
        if not lambda_f >= lambda_1:
            violations.append(
                Violation(
                    "FirstSlopeTooSmall",
                    f"lambda = {_format_slope(lambda_f)} < lambda_1 = {_format_slope(lambda_1)}",
                )
            )
        else:
            r_t = r_list[-1] - v_lead
            bound = lambda_1 * (d + e - 1)
            if r_t < bound:
                branch = "strict"
            elif r_t == bound:
                if vp(f.constant_term, p) > d * lambda_f:
                    branch = "equality_constant_term"
                elif lambda_f > lambda_1:
                    branch = "equality_slope"
                else:
                    violations.append(
                        Violation(
                            "EqualityBranchUnsatisfied",
                            f"r_t = {r_t} = lambda_1(d+e-1) but v_p(f(0)) = "
                            f"{vp(f.constant_term, p)} <= d*lambda = {_format_slope(d * lambda_f)} "
                            f"and lambda = lambda_1",
                        )
                    )
            else:
                violations.append(
                    Violation(
                        "ConstantValuationTooLarge",
                        f"r_t = {r_t} > {bound} = lambda_1(d+e-1)",
                    )
                )
    hyp = CompositionHypotheses(
        e=e, d=d, m_list=m_list, r_list=r_list, lambdas=lambdas, lambda_f=lambda_f, branch=branch
    )
    if violations:
        return TheoremCertificate(
            theorem="composition",
            verdict=VIOLATED,
            violations=tuple(violations),
            hypotheses=hyp,
            notes=tuple(notes),
        )
    return TheoremCertificate(
        theorem="composition",
        verdict=SATISFIED,
        predicted_polygon=np_g.horizontal_stretch(d),
        parameters={
            "branch": branch,
            "lambda": _format_slope(lambda_f),
            "lambda_1": _format_slope(lambdas[0]),
        },
        notes=tuple(notes),
        hypotheses=hyp,
        base_polygon=np_g,
        stretch_per_level=d,
        prediction_kind="compose",
    )


def check_iterate(f: RationalPoly, p: int) -> TheoremCertificate:
    """Certificate for the iterate theorem: NP_p(f^n) is NP_p(f) stretched
    by deg(f)^(n-1) whenever v_p(a_{m_1}) > 0 and
    v_p(a_0) <= (v_p(a_{m_1})/(d-m_1)) * (2d-1) (non-strict).

    Satisfied certificates also certify eventual stability with at most
    v_p(a_0) irreducible factors for every iterate.
    """
    _require_nonzero_constant(f)
    np_f = newton_polygon(f, p)
    d = f.degree
    m_list, r_list = _outer_vertex_data(np_f)
    lambdas = np_f.slopes
    violations: list[Violation] = []
    notes: list[str] = []
    if d < 2:
        # a degree-1 map shifts constant valuations under iteration
        # (x + p has second iterate x + 2p), so the stretch claim needs
        # d >= 2: the bound then only binds with room for the equality escape
        violations.append(
            Violation("DegreeTooSmall", f"iterate polygons require deg f >= 2, got {d}")
        )
    elif np_f.origin_height != 0:
        violations.append(
            Violation("LeadingCoefficientNotUnit", f"v_p(lead f) = {np_f.origin_height} != 0")
        )
    elif r_list[1] <= 0:
        violations.append(
            Violation(
                "FirstSlopeNotPositive",
                f"v_p(a_{m_list[1]}) = {r_list[1]} is not positive",
            )
        )
    else:
        bound = Fraction(r_list[1], d - m_list[1]) * (2 * d - 1)
        if not r_list[-1] <= bound:
            violations.append(
                Violation(
                    "ConstantValuationTooLarge",
                    f"v_p(a_0) = {r_list[-1]} > {bound} = (v_p(a_m1)/(d-m_1))(2d-1)",
                )
            )
        else:
            notes.append(
                "the positive first slope already forces p | a_i for every i < d "
                "(hull convexity), so no separate divisibility hypothesis is needed"
            )
    hyp = CompositionHypotheses(
        e=d, d=d, m_list=m_list, r_list=r_list, lambdas=lambdas, lambda_f=lambdas[0] if lambdas else None, branch=None
    )
    if violations:
        return TheoremCertificate(
            theorem="iterate", verdict=VIOLATED, violations=tuple(violations), hypotheses=hyp
        )
    height = r_list[-1]
    return TheoremCertificate(
        theorem="iterate",
        verdict=SATISFIED,
        predicted_polygon=np_f,  # level n = 1
        factor_bound=FactorConstraints(
            max_factor_count=height, admissible_degree_summands=(), per_edge_degree_divisor=()
        ),
        parameters={"eventually_stable": True, "factor_count_bound": height},
        notes=tuple(notes),
        hypotheses=hyp,
        base_polygon=np_f,
        stretch_per_level=d,
        prediction_kind="iterate",
    )


def check_composition_steep(g: RationalPoly, f: RationalPoly, p: int) -> TheoremCertificate:
    """Certificate for composition with slopes of either sign.

    Takes u as the least integer exceeding every |slope| of NP_p(g) and
    searches beta from deg(f) down to 1, coprime to u, such that
    v_p(a_i) >= (u/beta)(d - i) for every coefficient of f. The predicted
    polygon keeps the origin height v_p(b_e) and stretches horizontally.
    """
    _require_nonzero_constant(g)
    if f.degree < 1:
        raise ConstantPolynomial("inner polynomial must be nonconstant")
    np_g = newton_polygon(g, p)
    e = g.degree
    d = f.degree
    m_list, r_list = _outer_vertex_data(np_g)
    lambdas = np_g.slopes
    u = 1 + math.floor(max(abs(s) for s in lambdas))
    violations: list[Violation] = []
    if vp(f.leading_coefficient, p) != 0:
        violations.append(
            Violation(
                "LeadingCoefficientNotUnit",
                f"v_p(lead f) = {vp(f.leading_coefficient, p)} != 0",
            )
        )
    beta_found: int | None = None
    if not violations:
        best_miss: tuple[int, int, int] | None = None  # (failures, beta, first bad index)
        for beta in range(d, 0, -1):
            if math.gcd(beta, u) != 1:
                continue
            failures = 0
            first_bad = -1
            for i in range(d + 1):
                needed = Fraction(u, beta) * (d - i)
                if not vp(f.coefficient(i), p) >= needed:
                    failures += 1
                    if first_bad < 0:
                        first_bad = i
            if failures == 0:
                beta_found = beta
                break
            if best_miss is None or failures < best_miss[0]:
                best_miss = (failures, beta, first_bad)
        if beta_found is None:
            if best_miss is None:
                detail = f"no positive beta <= {d} is coprime to u = {u}"
            else:
                _, beta, bad = best_miss
                needed = Fraction(u, beta) * (d - bad)
                detail = (
                    f"u = {u} must exceed every |slope|; best candidate beta = {beta} "
                    f"fails at i = {bad}: v_p(a_{bad}) = {vp(f.coefficient(bad), p)} < "
                    f"{needed} = (u/beta)(d-i)"
                )
            violations.append(Violation("NoValidBeta", detail))
    hyp = CompositionHypotheses(
        e=e, d=d, m_list=m_list, r_list=r_list, lambdas=lambdas, lambda_f=None, branch=None
    )
    if violations:
        return TheoremCertificate(
            theorem="steep_composition",
            verdict=VIOLATED,
            violations=tuple(violations),
            parameters={"u": u},
            hypotheses=hyp,
        )
    return TheoremCertificate(
        theorem="steep_composition",
        verdict=SATISFIED,
        predicted_polygon=np_g.horizontal_stretch(d),
        parameters={"u": u, "beta": beta_found},
        hypotheses=hyp,
        base_polygon=np_g,
        stretch_per_level=d,
        prediction_kind="compose",
    )


@dataclass(frozen=True)
class PurityClass:
    """Whether the polygon of f is a single full-width edge of height r."""

    kind: str  # "dumas" | "pure" | "not_pure"
    prime: int
    r: int | None = None

    @property
    def is_pure(self) -> bool:
        return self.kind in ("pure", "dumas")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "prime": self.prime, "r": self.r}


def classify_purity(f: RationalPoly, p: int) -> PurityClass:
    """p^r-pure: v_p(a_d) = 0, v_p(a_0) = r >= 1 and every interior
    coefficient satisfies v_p(a_i)/(d-i) >= r/d; Dumas additionally requires
    gcd(r, d) = 1 (which certifies irreducibility of every iterate)."""
    _require_nonzero_constant(f)
    if f.degree < 1:
        raise ConstantPolynomial("purity requires a nonconstant polynomial")
    d = f.degree
    if vp(f.leading_coefficient, p) != 0:
        return PurityClass(kind="not_pure", prime=p)
    r = vp(f.constant_term, p)
    if not isinstance(r, int) or r < 1:
        return PurityClass(kind="not_pure", prime=p)
    ratio = Fraction(r, d)
    for i in range(1, d):
        c = f.coefficient(i)
        if c and Fraction(vp(c, p), d - i) < ratio:
            return PurityClass(kind="not_pure", prime=p)
    kind = "dumas" if math.gcd(r, d) == 1 else "pure"
    return PurityClass(kind=kind, prime=p, r=r)


def check_pure_composition(g: RationalPoly, f: RationalPoly, p: int) -> TheoremCertificate:
    """Composition certificate through purity: if f is p^r-pure and every
    slope of NP_p(g) has |slope| < r, the polygon of g.f has the same
    segment count with slopes divided by deg(f)."""
    _require_nonzero_constant(g)
    if f.degree < 1:
        raise ConstantPolynomial("inner polynomial must be nonconstant")
    np_g = newton_polygon(g, p)
    m_list, r_list = _outer_vertex_data(np_g)
    violations: list[Violation] = []
    purity = classify_purity(f, p)
    if not purity.is_pure:
        violations.append(Violation("NotPure", f"f is not p^r-pure at p = {p}"))
    else:
        for s in np_g.slopes:
            if not abs(s) < purity.r:
                violations.append(
                    Violation(
                        "SlopeExceedsR",
                        f"|{_format_slope(s)}| >= r = {purity.r}",
                    )
                )
                break
    hyp = CompositionHypotheses(
        e=g.degree,
        d=f.degree,
        m_list=m_list,
        r_list=r_list,
        lambdas=np_g.slopes,
        lambda_f=None,
        branch=None,
    )
    if violations:
        return TheoremCertificate(
            theorem="pure_composition", verdict=VIOLATED, violations=tuple(violations), hypotheses=hyp
        )
    notes = (
        f"f^n stays {p}^{purity.r}-pure for every n (its single-edge polygon stretches), "
        "so the prediction iterates",
    )
    return TheoremCertificate(
        theorem="pure_composition",
        verdict=SATISFIED,
        predicted_polygon=np_g.horizontal_stretch(f.degree),
        parameters={"r": purity.r, "purity": purity.kind},
        notes=notes,
        hypotheses=hyp,
        base_polygon=np_g,
        stretch_per_level=f.degree,
        prediction_kind="compose",
    )


def eventual_stability(f: RationalPoly, p: int) -> TheoremCertificate:
    """Eventual stability from the congruence class of f alone: if
    v_p(a_d) = 0 and v_p(a_i) > 0 for every i < d, each iterate has at most
    v_p(a_0) irreducible factors, uniformly in n."""
    _require_nonzero_constant(f)
    if f.degree < 1:
        raise ConstantPolynomial("stability requires a nonconstant polynomial")
    d = f.degree
    violations: list[Violation] = []
    if vp(f.leading_coefficient, p) != 0:
        violations.append(
            Violation("LeadingCoefficientNotUnit", f"v_p(lead f) = {vp(f.leading_coefficient, p)} != 0")
        )
    for i in range(d):
        c = f.coefficient(i)
        if c and not vp(c, p) >= 1:
            violations.append(
                Violation("InteriorCoefficientNotDivisible", f"v_p(a_{i}) = {vp(c, p)} is not positive")
            )
            break
    if violations:
        return TheoremCertificate(
            theorem="eventual_stability", verdict=VIOLATED, violations=tuple(violations)
        )
    bound = vp(f.constant_term, p)
    if d >= 2:
        notes = (
            f"f^n = a_d^((d^n-1)/(d-1)) x^(d^n) mod {p} and v_{p}(f^n(0)) = {bound} for every n, "
            f"so each iterate polygon climbs from (0,0) to height {bound} with at most {bound} edges",
        )
    else:
        notes = ("every iterate of a degree-1 polynomial is linear, hence irreducible",)
    return TheoremCertificate(
        theorem="eventual_stability",
        verdict=SATISFIED,
        factor_bound=FactorConstraints(
            max_factor_count=bound, admissible_degree_summands=(), per_edge_degree_divisor=()
        ),
        parameters={"eventually_stable": True, "factor_count_bound": bound},
        notes=notes,
    )


def best_certificate(g: RationalPoly, f: RationalPoly, p: int) -> TheoremCertificate:
    """Try the composition routes from most to least specific; the first
    Satisfied certificate wins, otherwise the positive-slope one is returned
    with its violations."""
    cert = check_composition(g, f, p)
    if cert.satisfied:
        return cert
    steep = check_composition_steep(g, f, p)
    if steep.satisfied:
        return steep
    pure = check_pure_composition(g, f, p)
    if pure.satisfied:
        return pure
    return cert


def _recheck_levels(cert: TheoremCertificate, n: int) -> None:
    # the iterated form of the signed-slope theorem: at level k the outer
    # slopes are lambda_j / d^(k-1), so u must still exceed their magnitudes
    if cert.theorem != "steep_composition" or n <= 1:
        return
    u = cert.parameters["u"]
    d = cert.stretch_per_level
    for k in range(2, n + 1):
        worst = max(abs(s) for s in cert.base_polygon.slopes) / d ** (k - 1)
        if not u > worst:
            raise HypothesesNotSatisfied(
                [Violation("LevelRecheckFailed", f"u = {u} <= max|slope|/d^{k - 1} = {worst}")]
            )


def predict_composition(
    g: RationalPoly,
    f: RationalPoly,
    p: int,
    n: int,
    certificate: TheoremCertificate | None = None,
) -> NewtonPolygon:
    """Predicted polygon of g.f^n (no composition performed).

    Requires a Satisfied certificate; raises HypothesesNotSatisfied
    otherwise. n = 0 returns the polygon of g itself.
    """
    cert = certificate if certificate is not None else best_certificate(g, f, p)
    if not cert.satisfied:
        raise HypothesesNotSatisfied(cert.violations)
    _recheck_levels(cert, n)
    return cert.predict(n)


def predict_iterate(f: RationalPoly, p: int, n: int) -> NewtonPolygon:
    """Predicted polygon of f^n under the iterate certificate (n >= 1)."""
    cert = check_iterate(f, p)
    if not cert.satisfied:
        raise HypothesesNotSatisfied(cert.violations)
    return cert.predict(n)


# -- machine-checkable vertex/coefficient oracles ---------------------------


def vertex_valuation_bound(polygon: NewtonPolygon, alpha: int) -> bool:
    """Vertex bound: with origin-relative heights r_s and r_t <=
    (r_1/(e-m_1)) * alpha, every vertex satisfies
    r_s <= (r_1/(e-m_1)) * (alpha - m_s)."""
    m_list, r_abs = _outer_vertex_data(polygon)
    r = [y - r_abs[0] for y in r_abs]
    if len(r) < 2:
        return True
    # r_1 / (e - m_1): the x-coordinate of the first interior vertex is e - m_1
    slope1 = Fraction(r[1], polygon.vertices[1][0] - polygon.vertices[0][0])
    return all(r[s] <= slope1 * (alpha - m_list[s]) for s in range(len(r)))


def telescoping_identity(polygon: NewtonPolygon) -> bool:
    """r_{s+1} = r_alpha + sum of slope_i * (m_{i-1} - m_i) over alpha < i <= s+1."""
    m_list, r_list = _outer_vertex_data(polygon)
    slopes = polygon.slopes
    t = len(slopes)
    for s_plus_1 in range(1, t + 1):
        for alpha in range(0, s_plus_1 + 1):
            acc = Fraction(r_list[alpha])
            for i in range(alpha + 1, s_plus_1 + 1):
                acc += slopes[i - 1] * (m_list[i - 1] - m_list[i])
            if acc != r_list[s_plus_1]:
                return False
    return True


def constant_transfer_bound(g: RationalPoly, p: int) -> Fraction | None:
    """max over j >= 1 of (v_p(b_0) - v_p(b_j)) / j for nonzero b_j."""
    v0 = vp(g.constant_term, p)
    best: Fraction | None = None
    for j in range(1, g.degree + 1):
        c = g.coefficient(j)
        if c:
            candidate = Fraction(v0 - vp(c, p), j)
            if best is None or candidate > best:
                best = candidate
    return best


def constant_term_valuation_stable(g: RationalPoly, f: RationalPoly, p: int) -> bool:
    """When v_p(f(0)) clears the transfer bound, v_p(g(f(0))) = v_p(g(0))."""
    bound = constant_transfer_bound(g, p)
    if bound is None:
        return True
    if not vp(f.constant_term, p) > bound:
        return True  # hypothesis empty, nothing to check
    return vp(g.evaluate(f.constant_term), p) == vp(g.constant_term, p)


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of the literal composition oracle against the stretch prediction."""

    prime: int
    n: int
    predicted: NewtonPolygon
    oracle: NewtonPolygon
    match: bool
    first_mismatch: dict | None
    composed_degree: int
    vertex_equalities: tuple[dict, ...]
    vertex_equalities_ok: bool
    coefficient_bounds_ok: bool
    coefficient_bound_violation: dict | None

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "n": self.n,
            "match": self.match,
            "first_mismatch": self.first_mismatch,
            "composed_degree": self.composed_degree,
            "predicted": self.predicted.as_dict(),
            "oracle": self.oracle.as_dict(),
            "vertex_equalities": list(self.vertex_equalities),
            "vertex_equalities_ok": self.vertex_equalities_ok,
            "coefficient_bounds_ok": self.coefficient_bounds_ok,
            "coefficient_bound_violation": self.coefficient_bound_violation,
        }


def _first_vertex_mismatch(
    predicted: NewtonPolygon, oracle: NewtonPolygon
) -> dict | None:
    pv, ov = predicted.vertices, oracle.vertices
    for i in range(max(len(pv), len(ov))):
        a = list(pv[i]) if i < len(pv) else None
        b = list(ov[i]) if i < len(ov) else None
        if a != b:
            return {"index": i, "predicted": a, "oracle": b}
    return None


def verify_prediction(
    g: RationalPoly,
    f: RationalPoly,
    p: int,
    n: int,
    *,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> ComparisonReport:
    """Compose g.f^n literally and compare its polygon with the naive
    stretch of NP_p(g), reporting the first differing vertex.

    Also evaluates the vertex equalities v_p(C_k) = r_s at k = d^n * m_s and
    the per-edge coefficient lower bounds
    v_p(C_k) >= r_{s+1} + lambda_{s+1} (m_{s+1} - k/d^n) for k <= d^n * m_s,
    coefficient by coefficient on the literal composition.
    """
    base = newton_polygon(g, p)
    d = f.degree
    composed = compose(g, iterate(f, n, degree_cap=degree_cap), degree_cap=degree_cap)
    oracle = newton_polygon(composed, p)
    predicted = base.horizontal_stretch(d**n) if d**n > 1 else base
    mismatch = _first_vertex_mismatch(predicted, oracle)

    m_list, r_list = _outer_vertex_data(base)
    scale = d**n
    equalities = []
    equalities_ok = True
    for s, m_s in enumerate(m_list):
        k = scale * m_s
        actual: Valuation = vp(composed.coefficient(k), p)
        ok = actual == r_list[s]
        equalities_ok = equalities_ok and ok
        equalities.append(
            {
                "k": k,
                "expected": r_list[s],
                "actual": "infinity" if isinstance(actual, Infinity) else actual,
                "ok": ok,
            }
        )

    bounds_ok = True
    bound_violation: dict | None = None
    slopes = base.slopes
    for s in range(len(slopes)):
        if not bounds_ok:
            break
        limit = scale * m_list[s]
        r_next = r_list[s + 1]
        lam = slopes[s]
        m_next = m_list[s + 1]
        for k in range(0, limit + 1):
            required = r_next + lam * (m_next - Fraction(k, scale))
            actual = vp(composed.coefficient(k), p)
            if not actual >= required:
                bounds_ok = False
                bound_violation = {
                    "s": s,
                    "k": k,
                    "required": str(required),
                    "actual": "infinity" if isinstance(actual, Infinity) else actual,
                }
                break

    return ComparisonReport(
        prime=p,
        n=n,
        predicted=predicted,
        oracle=oracle,
        match=mismatch is None,
        first_mismatch=mismatch,
        composed_degree=composed.degree,
        vertex_equalities=tuple(equalities),
        vertex_equalities_ok=equalities_ok,
        coefficient_bounds_ok=bounds_ok,
        coefficient_bound_violation=bound_violation,
    )
