"""Built-in worked examples with published polygon shapes.

Each fixture recomputes everything from scratch -- literal composition,
polygon, certificate -- and compares against the frozen published values.
They double as negative controls: every composition fixture violates
exactly one hypothesis and the literal polygon departs from the naive
stretch, which is what makes the hypotheses necessary and not just
convenient.
"""

from __future__ import annotations

from .ore import common_index_divisor, splitting_shape
from .polygon import newton_polygon
from .polyq import compose, iterate, parse, render
from .theorems import (
    check_composition,
    check_composition_steep,
    check_iterate,
    classify_purity,
    verify_prediction,
)

__all__ = ["run_all", "FIXTURES"]


def _vertices(poly, p):
    return list(map(list, newton_polygon(poly, p).vertices))


def _fixture_first_slope_violation() -> dict:
    """Composition where the inner first slope is too shallow."""
    f = parse("x^3+2x+4")
    g = parse("x^3+4x+16")
    gof = compose(g, f)
    checks = {
        "composition": render(gof) == "x^9+6x^7+12x^6+12x^5+48x^4+60x^3+48x^2+104x+96",
        "np_f": _vertices(f, 2) == [[0, 0], [2, 1], [3, 2]],
        "np_g": _vertices(g, 2) == [[0, 0], [2, 2], [3, 4]],
        "np_gof": _vertices(gof, 2) == [[0, 0], [6, 2], [8, 3], [9, 5]],
    }
    cert = check_composition(g, f, 2)
    checks["verdict"] = cert.verdict == "violated"
    checks["violation"] = [v.name for v in cert.violations] == ["FirstSlopeTooSmall"]
    report = verify_prediction(g, f, 2, 1)
    checks["oracle_mismatch"] = not report.match
    return {"name": "first-slope-violation", "checks": checks}


def _fixture_constant_valuation_violation_two_edges() -> dict:
    """Composition where v_p(g(0)) exceeds lambda_1(d+e-1), two edges."""
    f = parse("x^3+2x^2+2x+4")
    g = parse("x^3+2x+8")
    gof = compose(g, f)
    checks = {
        "composition": render(gof)
        == "x^9+6x^8+18x^7+44x^6+84x^5+120x^4+154x^3+148x^2+100x+80",
        "np_f": _vertices(f, 2) == [[0, 0], [2, 1], [3, 2]],
        "np_g": _vertices(g, 2) == [[0, 0], [2, 1], [3, 3]],
        "np_gof": _vertices(gof, 2) == [[0, 0], [6, 1], [8, 2], [9, 4]],
    }
    cert = check_composition(g, f, 2)
    checks["verdict"] = cert.verdict == "violated"
    checks["violation"] = [v.name for v in cert.violations] == ["ConstantValuationTooLarge"]
    checks["detail"] = "r_t = 3 > 5/2" in cert.violations[0].detail
    report = verify_prediction(g, f, 2, 1)
    checks["oracle_mismatch"] = not report.match
    return {"name": "constant-valuation-violation-two-edges", "checks": checks}


def _fixture_constant_valuation_violation_three_edges() -> dict:
    """Iterate whose constant valuation exceeds the bound, three edges."""
    f = parse("x^11+2x^4+4x+16")
    checks = {
        "np_f": _vertices(f, 2) == [[0, 0], [7, 1], [10, 2], [11, 4]],
        "np_f2": list(map(list, newton_polygon(iterate(f, 2), 2).vertices))
        == [[0, 0], [77, 1], [110, 2], [117, 3], [121, 4]],
    }
    cert = check_iterate(f, 2)
    checks["verdict"] = cert.verdict == "violated"
    checks["violation"] = [v.name for v in cert.violations] == ["ConstantValuationTooLarge"]
    checks["detail"] = "4 > 3" in cert.violations[0].detail
    report = verify_prediction(f, f, 2, 1)
    checks["oracle_mismatch"] = not report.match
    return {"name": "constant-valuation-violation-three-edges", "checks": checks}


def _fixture_steepness_violation() -> dict:
    """Signed-slope composition where no valid (u, beta) pair exists."""
    f = parse("x^5+4x+4")
    g = parse("x^3+4x+16")
    gof = compose(g, f)
    checks = {
        "composition": render(gof)
        == "x^15+12x^11+12x^10+48x^7+96x^6+52x^5+64x^3+192x^2+208x+96",
        "np_g": _vertices(g, 2) == [[0, 0], [2, 2], [3, 4]],
        "np_gof": _vertices(gof, 2) == [[0, 0], [10, 2], [14, 4], [15, 5]],
    }
    cert = check_composition_steep(g, f, 2)
    checks["verdict"] = cert.verdict == "violated"
    checks["violation"] = [v.name for v in cert.violations] == ["NoValidBeta"]
    checks["u"] = cert.parameters.get("u") == 3
    report = verify_prediction(g, f, 2, 1)
    checks["oracle_mismatch"] = not report.match
    return {"name": "steepness-violation", "checks": checks}


def _fixture_non_monogenic_tower() -> dict:
    """Quadrinomial generating a tower of non-monogenic fields at p = 2."""
    f = parse("x^4+54x^3+432x+3456")
    checks = {
        "np": _vertices(f, 2) == [[0, 0], [1, 1], [3, 4], [4, 7]],
        "dumas_at_3": classify_purity(f, 3).as_dict() == {"kind": "dumas", "prime": 3, "r": 3},
    }
    shape = splitting_shape(f, 2)
    checks["p_regular"] = shape.p_regular
    checks["degree_sum"] = shape.degree_sum == 4
    verdict = common_index_divisor(f, 2)
    checks["P1"] = verdict.P_counts.get(1) == 3
    checks["N1"] = verdict.N_counts.get(1) == 2
    checks["non_monogenic"] = verdict.common_index_divisor and verdict.witness_h == 1
    # the iterate certificate pushes the same polygon shape to every level
    cert = check_iterate(f, 2)
    checks["iterate_satisfied"] = cert.satisfied
    if cert.satisfied:
        checks["level2_polygon"] = list(map(list, cert.predict(2).vertices)) == [
            [0, 0],
            [4, 1],
            [12, 4],
            [16, 7],
        ]
        oracle = newton_polygon(iterate(f, 2), 2)
        checks["level2_oracle"] = oracle.vertices == cert.predict(2).vertices
    return {"name": "non-monogenic-tower", "checks": checks}


FIXTURES = (
    _fixture_first_slope_violation,
    _fixture_constant_valuation_violation_two_edges,
    _fixture_constant_valuation_violation_three_edges,
    _fixture_steepness_violation,
    _fixture_non_monogenic_tower,
)


def run_all() -> dict:
    results = []
    for fixture in FIXTURES:
        outcome = fixture()
        passed = all(outcome["checks"].values())
        results.append(
            {
                "name": outcome["name"],
                "passed": passed,
                "checks": {k: bool(v) for k, v in outcome["checks"].items()},
            }
        )
    return {"fixtures": results, "all_passed": all(r["passed"] for r in results)}
