from fractions import Fraction
from random import Random

import pytest

from newtonpoly.errors import HypothesesNotSatisfied, ZeroConstantTerm
from newtonpoly.polygon import newton_polygon
from newtonpoly.polyq import RationalPoly, compose, iterate, parse
from newtonpoly.search import (
    random_composition_instance,
    random_iterate_instance,
    random_steep_instance,
)
from newtonpoly.theorems import (
    best_certificate,
    check_composition,
    check_composition_steep,
    check_iterate,
    check_pure_composition,
    classify_purity,
    eventual_stability,
    predict_composition,
    predict_iterate,
    telescoping_identity,
    verify_prediction,
    vertex_valuation_bound,
)


class TestCompositionCertificate:
    def test_shallow_inner_slope_violation(self):
        cert = check_composition(parse("x^3+4x+16"), parse("x^3+2x+4"), 2)
        assert not cert.satisfied
        assert [v.name for v in cert.violations] == ["FirstSlopeTooSmall"]
        assert "1/2" in cert.violations[0].detail and "1" in cert.violations[0].detail

    def test_constant_valuation_violation(self):
        cert = check_composition(parse("x^3+2x+8"), parse("x^3+2x^2+2x+4"), 2)
        assert [v.name for v in cert.violations] == ["ConstantValuationTooLarge"]
        assert "r_t = 3 > 5/2" in cert.violations[0].detail

    def test_satisfied_self_composition(self):
        f = parse("x^3+2x+4")
        cert = check_composition(f, f, 2)
        assert cert.satisfied
        assert cert.parameters["branch"] == "strict"
        assert cert.predicted_polygon.vertices == ((0, 0), (6, 1), (9, 2))

    def test_interior_divisibility_violation(self):
        cert = check_composition(parse("x^2+x+2"), parse("x^3+2x+4"), 2)
        assert any(v.name == "InteriorCoefficientNotDivisible" for v in cert.violations)

    def test_inner_lead_unit_violation(self):
        cert = check_composition(parse("x^3+2x+4"), parse("2x^3+2x+4"), 2)
        assert any(v.name == "LeadingCoefficientNotUnit" for v in cert.violations)

    def test_zero_constant_term_is_an_error(self):
        with pytest.raises(ZeroConstantTerm):
            check_composition(parse("x^3+2x"), parse("x^2+2"), 2)

    def test_equality_branch_via_constant_term(self):
        # r_t = 3 = lambda_1(d+e-1) with d = 4, e = 3, lambda_1 = 1/2;
        # v_2(f(0)) = 3 > d*lambda = 8/3
        g, f = parse("x^3+2x+8"), parse("x^4+4x+8")
        cert = check_composition(g, f, 2)
        assert cert.satisfied
        assert cert.parameters["branch"] == "equality_constant_term"
        assert verify_prediction(g, f, 2, 1).match

    def test_equality_branch_via_slope(self):
        # same g; f single-edge of slope 3/4 > 1/2 makes v_2(f(0)) = d*lambda,
        # so only the slope disjunct applies
        g, f = parse("x^3+2x+8"), parse("x^4+8x+8")
        cert = check_composition(g, f, 2)
        assert cert.satisfied
        assert cert.parameters["branch"] == "equality_slope"
        assert verify_prediction(g, f, 2, 1).match

    def test_equality_branch_unsatisfied(self):
        # f shares the first-edge slope 1/2 and v_2(f(0)) = d*lambda exactly
        g, f = parse("x^3+2x+8"), parse("x^4+4x+4")
        cert = check_composition(g, f, 2)
        assert [v.name for v in cert.violations] == ["EqualityBranchUnsatisfied"]

    def test_leading_unit_normalization(self):
        # scaling g by p shifts its polygon up; the certificate normalizes and
        # the prediction keeps the original heights
        g = parse("2x^3+4x+8")
        f = parse("x^3+2x+4")
        cert = check_composition(g, f, 2)
        assert cert.satisfied
        assert cert.predicted_polygon.vertices == ((0, 1), (6, 2), (9, 3))
        assert any("normalized" in note for note in cert.notes)
        assert verify_prediction(g, f, 2, 1).match

    def test_monomial_inner(self):
        # f = x^d has no polygon edge; its first-edge slope counts as infinite
        g = parse("x^3+2x+8")
        cert = check_composition(g, parse("x^4"), 2)
        assert cert.satisfied
        assert cert.parameters["branch"] == "equality_slope"
        oracle = newton_polygon(compose(g, parse("x^4")), 2)
        assert oracle.vertices == cert.predict(1).vertices


class TestIterateCertificate:
    def test_satisfied(self):
        cert = check_iterate(parse("x^3+2x+4"), 2)
        assert cert.satisfied
        assert cert.predict(2).vertices == ((0, 0), (6, 1), (9, 2))
        assert cert.parameters["eventually_stable"] is True
        assert cert.factor_bound.max_factor_count == 2

    def test_violated_bound(self):
        cert = check_iterate(parse("x^11+2x^4+4x+16"), 2)
        assert [v.name for v in cert.violations] == ["ConstantValuationTooLarge"]
        assert "4 > 3" in cert.violations[0].detail

    def test_single_edge_always_satisfies_bound(self):
        cert = check_iterate(parse("x^2+2"), 2)
        assert cert.satisfied
        assert cert.predict(3).vertices == ((0, 0), (8, 1))

    def test_nonpositive_first_slope(self):
        cert = check_iterate(parse("x^2+x+2"), 2)
        assert [v.name for v in cert.violations] == ["FirstSlopeNotPositive"]

    def test_degree_one_refused(self):
        # x + 2 meets the displayed bound with equality but its second
        # iterate is x + 4, so the conclusion fails; linear maps are refused
        cert = check_iterate(parse("x+2"), 2)
        assert [v.name for v in cert.violations] == ["DegreeTooSmall"]

    def test_equality_bound_accepted(self):
        # v_2(a_0) = 7 equals lambda_1 (2d-1) = 7 for the quadrinomial
        cert = check_iterate(parse("x^4+54x^3+432x+3456"), 2)
        assert cert.satisfied
        assert newton_polygon(iterate(parse("x^4+54x^3+432x+3456"), 2), 2).vertices == cert.predict(2).vertices


class TestSteepCertificate:
    def test_published_violation(self):
        cert = check_composition_steep(parse("x^3+4x+16"), parse("x^5+4x+4"), 2)
        assert not cert.satisfied
        assert cert.parameters["u"] == 3
        assert [v.name for v in cert.violations] == ["NoValidBeta"]

    def test_satisfied_with_u3_beta4(self):
        g, f = parse("x^3+4x+16"), parse("x^4+2x^3+4x^2+8x+8")
        cert = check_composition_steep(g, f, 2)
        assert cert.satisfied
        assert cert.parameters == {"u": 3, "beta": 4}
        assert cert.predicted_polygon.vertices == ((0, 0), (8, 2), (12, 4))
        assert verify_prediction(g, f, 2, 1).match

    def test_negative_slopes(self):
        g, f = parse("2x^2+x+2"), parse("x^3+4x+8")
        cert = check_composition_steep(g, f, 2)
        assert cert.satisfied
        assert cert.parameters == {"u": 2, "beta": 3}
        assert cert.predicted_polygon.vertices == ((0, 1), (3, 0), (6, 1))
        report = verify_prediction(g, f, 2, 1)
        assert report.match and report.oracle.origin_height == 1

    def test_iterated_prediction_rechecks_levels(self):
        g, f = parse("2x^2+x+2"), parse("x^3+4x+8")
        cert = check_composition_steep(g, f, 2)
        predicted = predict_composition(g, f, 2, 2, certificate=cert)
        assert predicted.vertices == ((0, 1), (9, 0), (18, 1))
        assert verify_prediction(g, f, 2, 2).match


class TestPurity:
    def test_examples(self):
        assert classify_purity(parse("x^3+18x+36"), 3).as_dict() == {
            "kind": "dumas",
            "prime": 3,
            "r": 2,
        }
        assert classify_purity(parse("x^4+54x^3+432x+3456"), 3).kind == "dumas"
        assert classify_purity(parse("x^2+x+2"), 2).kind == "not_pure"

    def test_pure_but_not_dumas(self):
        # single edge (0,0) -> (4,2): gcd(2,4) = 2
        f = RationalPoly([4, 0, 2, 0, 1])
        assert classify_purity(f, 2).as_dict() == {"kind": "pure", "prime": 2, "r": 2}

    def test_pure_composition_certificate(self):
        g, f = parse("x^2+2x+2"), parse("x^3+2x+2")
        cert = check_pure_composition(g, f, 2)
        assert cert.satisfied
        assert cert.predicted_polygon.slopes == (Fraction(1, 6),)
        assert verify_prediction(g, f, 2, 1).match

    def test_not_pure_violation(self):
        cert = check_pure_composition(parse("x^2+2x+2"), parse("x^2+x+2"), 2)
        assert [v.name for v in cert.violations] == ["NotPure"]

    def test_slope_exceeds_r(self):
        # g with slope 2 against a 2^1-pure f
        cert = check_pure_composition(parse("x^2+2x+16"), parse("x^3+2x+2"), 2)
        assert [v.name for v in cert.violations] == ["SlopeExceedsR"]


class TestEventualStability:
    def test_satisfied(self):
        cert = eventual_stability(parse("x^2+2x+4"), 2)
        assert cert.satisfied
        assert cert.factor_bound.max_factor_count == 2
        # the oracle heights stay at v_2(a_0) for n <= 4
        f = parse("x^2+2x+4")
        for n in range(1, 5):
            assert newton_polygon(iterate(f, n), 2).total_height == 2

    def test_family_instance(self):
        cert = eventual_stability(parse("x^12+6x^6+20x^2+56"), 2)
        assert cert.satisfied
        assert cert.factor_bound.max_factor_count == 3

    def test_violated(self):
        cert = eventual_stability(parse("x^2+x+2"), 2)
        assert not cert.satisfied


class TestPredictors:
    def test_predict_refuses_on_violation(self):
        f = parse("x^11+2x^4+4x+16")
        with pytest.raises(HypothesesNotSatisfied):
            predict_composition(f, f, 2, 1)
        with pytest.raises(HypothesesNotSatisfied):
            predict_iterate(f, 2, 2)

    def test_predict_n0_returns_base_polygon(self):
        f = parse("x^3+2x+4")
        assert predict_composition(f, f, 2, 0).vertices == newton_polygon(f, 2).vertices

    def test_best_certificate_prefers_composition(self):
        f = parse("x^3+2x+4")
        assert best_certificate(f, f, 2).theorem == "composition"

    def test_best_certificate_falls_back_to_steep(self):
        g = parse("2x^2+x+2")  # negative slope: the positive-slope route cannot apply
        cert = best_certificate(g, parse("x^3+4x+8"), 2)
        assert cert.theorem == "steep_composition" and cert.satisfied


class TestVerifyOracle:
    def test_mismatch_reports_first_differing_vertex(self):
        report = verify_prediction(parse("x^3+4x+16"), parse("x^3+2x+4"), 2, 1)
        assert not report.match
        assert report.first_mismatch == {
            "index": 2,
            "predicted": [9, 4],
            "oracle": [8, 3],
        }

    def test_match_includes_lemma_checks(self):
        f = parse("x^3+2x+4")
        report = verify_prediction(f, f, 2, 2)
        assert report.match
        assert report.vertex_equalities_ok
        assert report.coefficient_bounds_ok
        ks = [eq["k"] for eq in report.vertex_equalities]
        assert ks == [27, 9, 0]  # d^n * m_s for m = (3, 1, 0)

    def test_iterate_polygon_against_oracle(self):
        f = parse("x^11+2x^4+4x+16")
        oracle = newton_polygon(iterate(f, 2), 2)
        assert oracle.vertices == ((0, 0), (77, 1), (110, 2), (117, 3), (121, 4))


class TestLemmaOracles:
    def test_on_satisfied_instances(self):
        rng = Random(31)
        for _ in range(25):
            p = rng.choice([2, 3, 5])
            g, f = random_composition_instance(rng, p, max_e=4, max_d=3)
            base = newton_polygon(g, p)
            alpha = f.degree + g.degree - 1
            assert vertex_valuation_bound(base, alpha)
            assert telescoping_identity(base)

    def test_single_edge_condition_automatic(self):
        # one-edged g with d >= 2 always lands in the strict branch
        rng = Random(77)
        for _ in range(40):
            p = rng.choice([2, 3, 5])
            e = rng.randint(1, 5)
            r = rng.randint(1, 6)
            coeffs = [Fraction(0)] * (e + 1)
            coeffs[e] = Fraction(1)
            coeffs[0] = Fraction(rng.choice([1, 3]) * p**r)
            for i in range(1, e):
                if rng.random() < 0.5:
                    v = -(-r * (e - i) // e) + rng.randint(0, 2)  # ceil + jitter
                    coeffs[i] = Fraction(p**v)
            g = RationalPoly(coeffs)
            if len(newton_polygon(g, p).edges) != 1:
                continue
            d = rng.randint(2, 4)
            lambda_1 = Fraction(r, e)
            f_coeffs = [Fraction(0)] * (d + 1)
            f_coeffs[d] = Fraction(1)
            f_coeffs[0] = Fraction(p ** (-(-lambda_1.numerator * d // lambda_1.denominator) + 1))
            f = RationalPoly(f_coeffs)
            cert = check_composition(g, f, p)
            assert not any(
                v.name in ("ConstantValuationTooLarge", "EqualityBranchUnsatisfied")
                for v in cert.violations
            )


class TestGenerators:
    def test_generators_produce_satisfied_instances(self):
        rng = Random(3)
        for p in (2, 3, 5):
            g, f = random_composition_instance(rng, p)
            assert check_composition(g, f, p).satisfied
            f2 = random_iterate_instance(rng, p)
            assert check_iterate(f2, p).satisfied
            g3, f3 = random_steep_instance(rng, p)
            assert check_composition_steep(g3, f3, p).satisfied
