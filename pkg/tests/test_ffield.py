from random import Random

import pytest

from newtonpoly.errors import NotSquarefree, PrimeTooLarge
from newtonpoly.ffield import (
    FpPoly,
    FqContext,
    FqPoly,
    count_monic_irreducibles,
    distinct_degree_profile,
    enumerate_monic_irreducibles,
    enumerate_monic_polys,
    fp_context,
    fq_from_fp,
    gcd_fq,
)


def fq2(coeffs):
    return fq_from_fp(fp_context(2), FpPoly.make(2, coeffs))


class TestFpPoly:
    def test_arithmetic(self):
        p = FpPoly.make(5, [1, 2, 3])
        q = FpPoly.make(5, [4, 4])
        assert (p + q).coeffs == (0, 1, 3)
        assert (p * q).coeffs == (4, 2, 0, 2)
        quotient, rem = divmod(p, q)
        assert (quotient * q + rem).coeffs == p.coeffs

    def test_gcd_monic(self):
        a = FpPoly.make(2, [1, 1]) * FpPoly.make(2, [1, 1, 1])
        b = FpPoly.make(2, [1, 1]) * FpPoly.make(2, [0, 1])
        assert a.gcd(b).coeffs == (1, 1)

    def test_irreducibility(self):
        assert FpPoly.make(2, [1, 1, 1]).is_irreducible()  # x^2+x+1
        assert not FpPoly.make(2, [1, 0, 1]).is_irreducible()  # (x+1)^2
        assert FpPoly.make(2, [1, 1, 0, 1]).is_irreducible()  # x^3+x+1
        assert FpPoly.make(3, [1, 0, 1]).is_irreducible()  # x^2+1 over F_3

    def test_irreducibility_matches_enumeration(self):
        for p in (2, 3):
            for degree in (2, 3):
                listed = set(
                    f.coeffs for f in enumerate_monic_irreducibles(p, degree)
                )
                brute = set()
                for f in enumerate_monic_polys(p, degree):
                    # a factor must have degree <= degree/2 if one exists
                    has_factor = False
                    for d in range(1, degree // 2 + 1):
                        for g in enumerate_monic_polys(p, d):
                            if divmod(f, g)[1].is_zero:
                                has_factor = True
                                break
                        if has_factor:
                            break
                    if not has_factor:
                        brute.add(f.coeffs)
                assert listed == brute

    def test_squarefree_decomposition(self):
        p = 2
        f = (
            FpPoly.make(p, [1, 1])
            * FpPoly.make(p, [1, 1])
            * FpPoly.make(p, [0, 1])
            * FpPoly.make(p, [1, 1, 1])
            * FpPoly.make(p, [1, 1, 1])
            * FpPoly.make(p, [1, 1, 1])
        )
        decomp = f.squarefree_decomposition()
        rebuilt = FpPoly.one(p)
        for part, mult in decomp:
            for _ in range(mult):
                rebuilt = rebuilt * part
        assert rebuilt.coeffs == f.monic().coeffs
        assert {(part.coeffs, mult) for part, mult in decomp} == {
            ((0, 1), 1),
            ((1, 1), 2),
            ((1, 1, 1), 3),
        }

    def test_squarefree_decomposition_pth_power(self):
        # f = (x^2+x+1)^2 over F_2 has zero derivative
        f = FpPoly.make(2, [1, 1, 1]) * FpPoly.make(2, [1, 1, 1])
        assert f.derivative().is_zero
        decomp = f.squarefree_decomposition()
        assert [(part.coeffs, mult) for part, mult in decomp] == [((1, 1, 1), 2)]

    def test_prime_bound(self):
        with pytest.raises(PrimeTooLarge):
            FpPoly.make(2**31 + 11, [1, 1])


class TestFqBasics:
    def test_gcd_example(self):
        assert gcd_fq(fq2([1, 1, 1]), fq2([1, 1])).degree == 0

    def test_squarefree_examples(self):
        assert not fq2([0, 0, 1]).is_squarefree()  # Y^2
        assert fq2([1, 1, 1]).is_squarefree()  # Y^2+Y+1: derivative is 1

    def test_inverse_in_f4(self):
        ctx = FqContext(p=2, modulus=FpPoly.make(2, [1, 1, 1]))
        alpha = FpPoly.make(2, [0, 1])
        inv = ctx.inv(alpha)
        assert ctx.mul(alpha, inv) == ctx.one
        # alpha^2 = alpha + 1 in F_4
        assert ctx.mul(alpha, alpha).coeffs == (1, 1)


class TestDistinctDegreeProfile:
    def test_examples_over_f2(self):
        assert distinct_degree_profile(fq2([1, 1, 1])) == [(2, 1)]
        assert distinct_degree_profile(fq2([0, 1, 1])) == [(1, 2)]  # Y(Y+1)
        assert distinct_degree_profile(fq2([1, 1, 0, 1])) == [(3, 1)]

    def test_requires_squarefree(self):
        with pytest.raises(NotSquarefree):
            distinct_degree_profile(fq2([0, 0, 1]))

    def _trial_division_profile(self, poly: FqPoly) -> list[tuple[int, int]]:
        # independent oracle: peel off monic factors degree by degree; any
        # divisor found at degree h is irreducible because all smaller
        # degrees were exhausted first, and once h exceeds half the
        # remaining degree the remainder is itself irreducible
        ctx = poly.ctx
        remaining = poly.monic()
        counts: dict[int, int] = {}
        h = 1
        while remaining.degree > 0:
            if 2 * h > remaining.degree:
                counts[remaining.degree] = counts.get(remaining.degree, 0) + 1
                break
            for cs in self._all_monic(ctx, h):
                candidate = FqPoly.make(ctx, cs)
                quotient, rem = divmod(remaining, candidate)
                if rem.is_zero:
                    counts[h] = counts.get(h, 0) + 1
                    remaining = quotient
            h += 1
        return sorted(counts.items())

    def _all_monic(self, ctx: FqContext, degree: int):
        elements = list(ctx.elements())

        def rec(i):
            if i == degree:
                yield [ctx.one]
                return
            for tail in rec(i + 1):
                for el in elements:
                    yield [el] + tail

        yield from rec(0)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_against_trial_division_over_fp(self, p):
        rng = Random(p * 41)
        ctx = fp_context(p)
        done = 0
        while done < 12:
            degree = rng.randint(2, 8)
            coeffs = [FpPoly.make(p, (rng.randrange(p),)) for _ in range(degree)] + [
                FpPoly.make(p, (1,))
            ]
            poly = FqPoly.make(ctx, coeffs)
            if not poly.is_squarefree():
                continue
            assert distinct_degree_profile(poly) == self._trial_division_profile(poly)
            done += 1

    def test_against_trial_division_over_f4(self):
        ctx = FqContext(p=2, modulus=FpPoly.make(2, [1, 1, 1]))
        rng = Random(17)
        done = 0
        while done < 8:
            degree = rng.randint(2, 4)
            coeffs = [
                FpPoly.make(2, (rng.randrange(2), rng.randrange(2))) for _ in range(degree)
            ] + [ctx.one]
            poly = FqPoly.make(ctx, coeffs)
            if not poly.is_squarefree():
                continue
            assert distinct_degree_profile(poly) == self._trial_division_profile(poly)
            done += 1

    def test_profile_degrees_sum(self):
        rng = Random(8)
        ctx = fp_context(3)
        for _ in range(20):
            degree = rng.randint(1, 6)
            coeffs = [FpPoly.make(3, (rng.randrange(3),)) for _ in range(degree)] + [ctx.one]
            poly = FqPoly.make(ctx, coeffs)
            if not poly.is_squarefree():
                continue
            profile = distinct_degree_profile(poly)
            assert sum(h * c for h, c in profile) == poly.degree


class TestFrobenius:
    @pytest.mark.parametrize("q_setup", [(2, [1, 1, 1]), (3, [1, 0, 1])])
    def test_repeated_power_maps_match_direct_exponentiation(self, q_setup):
        p, modulus = q_setup
        ctx = FqContext(p=p, modulus=FpPoly.make(p, modulus))
        q = ctx.q
        rng = Random(q)
        for _ in range(6):
            degree = rng.randint(2, 4)
            coeffs = [
                FpPoly.make(p, tuple(rng.randrange(p) for _ in range(ctx.extension_degree)))
                for _ in range(degree)
            ] + [ctx.one]
            a = FqPoly.make(ctx, coeffs)
            y = FqPoly.y(ctx)
            for h in (1, 2, 3):
                stepped = y
                for _ in range(h):
                    stepped = stepped.pow_mod(q, a)
                assert stepped == y.pow_mod(q**h, a)


class TestIrreducibleCounts:
    def test_examples(self):
        assert count_monic_irreducibles(2, 1) == 2
        assert count_monic_irreducibles(2, 2) == 1
        assert count_monic_irreducibles(3, 2) == 3

    def test_matches_enumeration(self):
        for p in (2, 3, 5):
            for h in (1, 2, 3):
                assert count_monic_irreducibles(p, h) == sum(
                    1 for _ in enumerate_monic_irreducibles(p, h)
                )

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_divisor_sum_identity(self, p):
        # p^H = sum over d | H of d * N_d
        for H in range(1, 7):
            total = sum(
                d * count_monic_irreducibles(p, d) for d in range(1, H + 1) if H % d == 0
            )
            assert total == p**H
