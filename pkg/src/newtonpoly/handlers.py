"""Shared operation layer behind the HTTP endpoints and the CLI.

Handlers take validated request models and return JSON-ready dicts; domain
failures surface as NewtonPolyError subclasses for the caller to map onto
its own error channel (HTTP status or exit code).
"""

from __future__ import annotations

import os

from . import fixtures as fixtures_mod
from .ore import (
    SchurSpec,
    common_index_divisor,
    residual_data,
    schur_polynomial,
    schur_polygon,
    schur_slope_formula,
    schur_dynamical_irreducibility,
    splitting_shape,
)
from .polygon import dumas_merge, newton_polygon, phi_newton_polygon
from .polyq import DEFAULT_DEGREE_CAP, parse, render
from .schemas import (
    MergeRequest,
    NpRequest,
    PolyPrimeRequest,
    PredictRequest,
    ResidualRequest,
    SchurRequest,
    SearchRequest,
    VerifyRequest,
)
from .search import boundary_search
from .theorems import (
    best_certificate,
    check_composition,
    check_composition_steep,
    check_iterate,
    check_pure_composition,
    classify_purity,
    eventual_stability,
    verify_prediction,
)
from .valuations import vp

ENV_DEGREE_CAP = "NEWTON_DEGREE_CAP"


def effective_degree_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(ENV_DEGREE_CAP)
    return int(env) if env else DEFAULT_DEGREE_CAP


def handle_np(req: NpRequest) -> dict:
    poly = parse(req.polynomial)
    if req.phi is not None:
        return phi_newton_polygon(poly, parse(req.phi), req.prime).as_dict()
    return newton_polygon(poly, req.prime, strip_zero_root=req.strip_zero_root).as_dict()


def handle_merge(req: MergeRequest) -> dict:
    f = parse(req.f)
    g = parse(req.g)
    np_f = newton_polygon(f, req.prime)
    np_g = newton_polygon(g, req.prime)
    product = f * g
    k = vp(product.leading_coefficient, req.prime)
    merged = dumas_merge(np_f, np_g, k)
    out = {
        "merged": merged.as_dict(),
        "translates": [[s.numerator, s.denominator, length] for s, length in merged.merged_from],
    }
    if req.check:
        direct = newton_polygon(product, req.prime)
        out["product_polygon"] = direct.as_dict()
        out["equal"] = direct.vertices == merged.vertices
    return out


_CHECKERS = {
    "composition": check_composition,
    "steep": check_composition_steep,
    "pure": check_pure_composition,
}


def handle_predict(req: PredictRequest) -> dict:
    f = parse(req.f)
    if req.g is None or req.theorem == "iterate":
        cert = check_iterate(f, req.prime)
    elif req.theorem == "auto":
        cert = best_certificate(parse(req.g), f, req.prime)
    else:
        try:
            checker = _CHECKERS[req.theorem]
        except KeyError:
            raise ValueError(
                f"unknown theorem {req.theorem!r}; expected auto, composition, steep, pure or iterate"
            ) from None
        cert = checker(parse(req.g), f, req.prime)
    out = {"certificate": cert.as_dict(), "n": req.n, "prediction": None}
    if cert.satisfied:
        out["prediction"] = cert.predict(req.n).as_dict()
    return out


def handle_verify(req: VerifyRequest) -> dict:
    report = verify_prediction(
        parse(req.g),
        parse(req.f),
        req.prime,
        req.n,
        degree_cap=effective_degree_cap(req.degree_cap),
    )
    return report.as_dict()


def handle_stability(req: PolyPrimeRequest) -> dict:
    return eventual_stability(parse(req.polynomial), req.prime).as_dict()


def handle_purity(req: PolyPrimeRequest) -> dict:
    return classify_purity(parse(req.polynomial), req.prime).as_dict()


def handle_residual(req: ResidualRequest) -> dict:
    poly = parse(req.polynomial)
    phi = parse(req.phi)
    polygon = phi_newton_polygon(poly, phi, req.prime)
    data = residual_data(poly, phi, req.prime)
    return {
        "prime": req.prime,
        "phi": render(phi),
        "polygon": polygon.as_dict(),
        "data": [d.as_dict() for d in data],
    }


def handle_split(req: PolyPrimeRequest) -> dict:
    return splitting_shape(parse(req.polynomial), req.prime).as_dict()


def handle_index_divisor(req: PolyPrimeRequest) -> dict:
    poly = parse(req.polynomial)
    verdict = common_index_divisor(poly, req.prime)
    out = verdict.as_dict()
    out["splitting"] = splitting_shape(poly, req.prime).as_dict()
    return out


def handle_schur(req: SchurRequest) -> dict:
    spec = SchurSpec.create(req.m, req.prime, req.b)
    polygon = schur_polygon(spec)
    out = {
        "m": spec.m,
        "prime": spec.p,
        "polynomial": render(schur_polynomial(spec)),
        "polygon": polygon.as_dict(),
        "formula_slopes": [
            {"num": s.numerator, "den": s.denominator} for s in schur_slope_formula(spec)
        ],
        "certificate": None,
    }
    if req.f is not None:
        cert = schur_dynamical_irreducibility(parse(req.f), spec)
        out["certificate"] = cert.as_dict()
    return out


def handle_paper_examples() -> dict:
    return fixtures_mod.run_all()


def handle_search(req: SearchRequest) -> dict:
    return boundary_search(req.seed, req.count, tuple(req.primes))
