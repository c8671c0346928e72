"""Acceptance suite.

Each criterion is one test that prints a single pass/fail line (visible
with `pytest -s`). All comparisons are exact: integer vertex equality,
exact fraction slopes, zero tolerance anywhere.
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from random import Random

import pytest

from newtonpoly.fixtures import run_all as run_fixtures
from newtonpoly.ore import (
    SchurSpec,
    common_index_divisor,
    schur_dynamical_irreducibility,
    schur_polygon,
    splitting_shape,
    truncated_exponential,
)
from newtonpoly.polygon import dumas_merge, newton_polygon
from newtonpoly.polyq import RationalPoly, compose, iterate, parse
from newtonpoly.search import (
    random_composition_instance,
    random_iterate_instance,
    random_steep_instance,
)
from newtonpoly.theorems import (
    check_composition,
    check_composition_steep,
    check_iterate,
    eventual_stability,
    telescoping_identity,
    verify_prediction,
    vertex_valuation_bound,
)
from newtonpoly.valuations import vp

SEED = 20260808
DEGREE_LIMIT = 2000


@contextmanager
def criterion(number: int, name: str):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"\nACCEPTANCE {number} {name}: FAIL ({time.perf_counter() - start:.2f}s)")
        raise
    print(f"\nACCEPTANCE {number} {name}: PASS ({time.perf_counter() - start:.2f}s)")


def test_criterion_1_published_fixtures():
    with criterion(1, "published fixtures reproduce verbatim"):
        f1, g1 = parse("x^3+2x+4"), parse("x^3+4x+16")
        assert newton_polygon(compose(g1, f1), 2).vertices == ((0, 0), (6, 2), (8, 3), (9, 5))
        cert1 = check_composition(g1, f1, 2)
        assert not cert1.satisfied
        assert [v.name for v in cert1.violations] == ["FirstSlopeTooSmall"]

        f2, g2 = parse("x^3+2x^2+2x+4"), parse("x^3+2x+8")
        assert newton_polygon(compose(g2, f2), 2).vertices == ((0, 0), (6, 1), (8, 2), (9, 4))
        cert2 = check_composition(g2, f2, 2)
        assert [v.name for v in cert2.violations] == ["ConstantValuationTooLarge"]
        assert "r_t = 3 > 5/2" in cert2.violations[0].detail

        f3 = parse("x^11+2x^4+4x+16")
        assert newton_polygon(f3, 2).vertices == ((0, 0), (7, 1), (10, 2), (11, 4))
        assert newton_polygon(iterate(f3, 2), 2).vertices == (
            (0, 0), (77, 1), (110, 2), (117, 3), (121, 4),
        )
        cert3 = check_iterate(f3, 2)
        assert [v.name for v in cert3.violations] == ["ConstantValuationTooLarge"]
        assert "4 > 3" in cert3.violations[0].detail

        f4, g4 = parse("x^5+4x+4"), parse("x^3+4x+16")
        assert newton_polygon(compose(g4, f4), 2).vertices == ((0, 0), (10, 2), (14, 4), (15, 5))
        cert4 = check_composition_steep(g4, f4, 2)
        assert [v.name for v in cert4.violations] == ["NoValidBeta"]

        # the fixture module re-runs all of the above plus the quadrinomial
        assert run_fixtures()["all_passed"]


def _levels(total_degree_of):
    ns = []
    n = 1
    while total_degree_of(n) <= DEGREE_LIMIT and n <= 10:
        ns.append(n)
        n += 1
    return ns


@pytest.fixture(scope="module")
def soundness_corpus():
    """300 Satisfied instances (100 per theorem route) with oracle reports."""
    build_start = time.perf_counter()
    rng = Random(SEED)
    records = []
    for index in range(100):
        p = rng.choice([2, 3, 5])
        large = index % 7 == 0
        g, f = random_composition_instance(
            rng, p, max_e=7 if large else 5, max_d=6 if large else 4
        )
        cert = check_composition(g, f, p)
        levels = _levels(lambda n: g.degree * f.degree**n)
        if not large:
            levels = levels[:3]
        reports = [(n, verify_prediction(g, f, p, n)) for n in levels]
        records.append(
            {"route": "composition", "p": p, "g": g, "f": f, "cert": cert, "reports": reports}
        )
    for index in range(100):
        p = rng.choice([2, 3, 5])
        f = random_iterate_instance(rng, p, max_d=5)
        cert = check_iterate(f, p)
        levels = _levels(lambda n: f.degree**n)
        if index % 7 != 0:
            levels = levels[:3]
        reports = [(n, verify_prediction(f, f, p, n - 1)) for n in levels]
        records.append(
            {"route": "iterate", "p": p, "g": f, "f": f, "cert": cert, "reports": reports}
        )
    for index in range(100):
        p = rng.choice([2, 3, 5])
        g, f = random_steep_instance(rng, p)
        cert = check_composition_steep(g, f, p)
        levels = _levels(lambda n: g.degree * f.degree**n)[:3]
        reports = [(n, verify_prediction(g, f, p, n)) for n in levels]
        records.append(
            {"route": "steep", "p": p, "g": g, "f": f, "cert": cert, "reports": reports}
        )
    return {"records": records, "build_seconds": time.perf_counter() - build_start}


def test_criterion_2_theorem_soundness_sweep(soundness_corpus):
    start = time.perf_counter()
    records = soundness_corpus["records"]
    try:
        assert len(records) == 300
        verifications = 0
        largest = 0
        for record in records:
            cert = record["cert"]
            assert cert.satisfied, (record["route"], record["g"], record["f"])
            for n, report in record["reports"]:
                assert report.match, (
                    record["route"], record["p"], record["g"], record["f"], n,
                    report.first_mismatch,
                )
                assert cert.predict(n).vertices == report.predicted.vertices
                verifications += 1
                largest = max(largest, report.composed_degree)
        assert verifications >= 600  # every instance verified at multiple levels
        assert largest >= 1000  # the sweep reaches near the degree-2000 cap
    except Exception:
        elapsed = time.perf_counter() - start + soundness_corpus["build_seconds"]
        print(f"\nACCEPTANCE 2 300-instance soundness sweep, predictions == oracle: FAIL ({elapsed:.2f}s)")
        raise
    elapsed = time.perf_counter() - start + soundness_corpus["build_seconds"]
    print(f"\nACCEPTANCE 2 300-instance soundness sweep, predictions == oracle: PASS ({elapsed:.2f}s)")


def test_criterion_3_lemma_suite(soundness_corpus):
    with criterion(3, "vertex bounds, telescoping, coefficient inequalities"):
        checked = 0
        for record in soundness_corpus["records"]:
            if record["route"] != "composition":
                continue
            g, f, p = record["g"], record["f"], record["p"]
            base = newton_polygon(g, p)
            alpha = g.degree + f.degree - 1
            assert vertex_valuation_bound(base, alpha)
            assert telescoping_identity(base)
            for _, report in record["reports"]:
                assert report.vertex_equalities_ok
                assert report.coefficient_bounds_ok
                checked += 1
        assert checked >= 100


def test_criterion_4_dumas_merge_500_products():
    with criterion(4, "Dumas merge equals recomputed product polygon, 500 pairs"):
        rng = Random(SEED + 4)
        done = 0
        while done < 500:
            p = rng.choice([2, 3, 5])
            f = RationalPoly(
                [rng.randint(1, 500)]
                + [rng.randint(-500, 500) for _ in range(rng.randint(1, 7))]
            )
            g = RationalPoly(
                [rng.randint(1, 500)]
                + [rng.randint(-500, 500) for _ in range(rng.randint(1, 7))]
            )
            if f.degree < 1 or g.degree < 1:
                continue
            product = f * g
            merged = dumas_merge(
                newton_polygon(f, p),
                newton_polygon(g, p),
                vp(product.leading_coefficient, p),
            )
            direct = newton_polygon(product, p)
            assert merged.vertices == direct.vertices
            assert merged.edges == direct.edges
            done += 1


def test_criterion_5_schur_pipeline():
    with criterion(5, "Schur polygons and dynamical irreducibility"):
        for p in (2, 3, 5):
            for m in range(p, 61, p):
                spec = SchurSpec.exponential(m, p)
                formula = schur_polygon(spec)
                literal = newton_polygon(truncated_exponential(m), p)
                assert formula.vertices == literal.vertices
                assert formula.slopes == literal.slopes
        f = parse("x^3+2x+2")
        cert = schur_dynamical_irreducibility(f, SchurSpec.exponential(2, 2))
        assert cert.satisfied
        e2 = truncated_exponential(2)
        level1 = newton_polygon(compose(e2, f), 2)
        assert len(level1.edges) == 1 and level1.slopes == (Fraction(1, 6),)
        level2 = newton_polygon(compose(e2, iterate(f, 2)), 2)
        assert len(level2.edges) == 1 and level2.slopes == (Fraction(1, 18),)


def test_criterion_6_ore_pipeline():
    with criterion(6, "splitting shapes and the common-index-divisor witness"):
        quad = parse("x^4+54x^3+432x+3456")
        shape = splitting_shape(quad, 2)
        assert shape.p_regular
        verdict = common_index_divisor(quad, 2)
        assert verdict.P_counts[1] == 3
        assert verdict.N_counts[1] == 2
        assert verdict.common_index_divisor
        trinomial = parse("x^3+18x+36")
        shape2 = splitting_shape(trinomial, 2)
        assert shape2.entries == ((2, 1, 1), (1, 1, 1))
        assert shape2.degree_sum == 3
        assert shape2.display() == "2\u00b7Z_K = p1^2 \u00b7 p2"


def test_criterion_7_eventual_stability_family():
    with criterion(7, "eventual stability of the orbit family instance"):
        f = parse("x^12+6x^6+20x^2+56")
        cert = eventual_stability(f, 2)
        assert cert.satisfied
        assert cert.factor_bound.max_factor_count == 3
        assert vp(parse("56").constant_term, 2) == 3
        oracle = newton_polygon(iterate(f, 2), 2)
        assert oracle.total_height == 3
