"""Exponential-polynomial algebra, root isolation, and exact sign patterns."""
import math

import numpy as np
import pytest

from tailorder.exppoly import ExpPoly
from tailorder.patterns import EXACT


def c_const(s, lam):
    return 1.0 + lam ** (1 - s) - (lam + 1.0) ** (1 - s)


def u_poly(s, lam):
    """Difference of the iterated parallel-system tails, homogeneous minus
    heterogeneous, written out term by term."""
    c = c_const(s, lam)
    return ExpPoly((
        (2.0 ** s / (2.0 ** s - 1) - 1.0 / c, 1.0),
        (-1.0 / (2.0 ** s - 1), 2.0),
        (-1.0 / (c * lam ** (s - 1)), lam),
        (1.0 / (c * (lam + 1.0) ** (s - 1)), lam + 1.0),
    ))


class TestEval:
    def test_cancelling_coefficients_at_zero(self):
        p = ExpPoly(((1.0, 1.0), (-1.0, 2.0)))
        assert p.eval(0.0) == 0.0

    def test_two_component_system_tail(self):
        # tail of max(exp(1), exp(2)) at x = 1
        p = ExpPoly(((1.0, 1.0), (1.0, 2.0), (-1.0, 3.0)))
        expected = math.exp(-1) + math.exp(-2) - math.exp(-3)
        assert p.eval(1.0) == pytest.approx(expected, abs=1e-15)

    def test_scaling_term(self):
        p = ExpPoly(((2.0, 1.0),))
        assert p.eval(math.log(2.0)) == pytest.approx(1.0, abs=1e-15)

    def test_vectorized(self):
        p = ExpPoly(((1.0, 1.0), (-0.5, 3.0)))
        xs = np.linspace(0, 5, 11)
        vals = p.eval(xs)
        assert vals.shape == xs.shape
        assert vals[0] == pytest.approx(0.5)


class TestConstruction:
    def test_rates_must_be_positive(self):
        with pytest.raises(ValueError):
            ExpPoly(((1.0, 0.0),))
        with pytest.raises(ValueError):
            ExpPoly(((1.0, -1.0),))

    def test_equal_rates_merge(self):
        p = ExpPoly(((1.0, 2.0), (0.5, 2.0), (1.0, 1.0)))
        assert p.terms == ((1.0, 1.0), (1.5, 2.0))

    def test_full_cancellation_rejected(self):
        with pytest.raises(ValueError):
            ExpPoly(((1.0, 2.0), (-1.0, 2.0)))
        assert ExpPoly.maybe(((1.0, 2.0), (-1.0, 2.0))) is None

    def test_terms_sorted_by_rate(self):
        p = ExpPoly(((1.0, 5.0), (2.0, 1.0)))
        assert p.rates == (1.0, 5.0)


class TestDifferentiate:
    def test_single_term(self):
        p = ExpPoly(((1.0, 1.0),))
        assert p.differentiate(1).terms == ((-1.0, 1.0),)

    def test_second_derivative(self):
        p = ExpPoly(((3.0, 2.0),))
        assert p.differentiate(2).terms == ((12.0, 2.0),)

    def test_composition_is_exact(self):
        p = ExpPoly(((1.5, 0.5), (-2.0, 1.5), (0.25, 4.0)))
        for j, k in ((1, 1), (2, 1), (0, 3)):
            assert p.differentiate(j + k).terms \
                == p.differentiate(j).differentiate(k).terms

    def test_matches_central_finite_difference(self):
        p = ExpPoly(((1.0, 0.7), (-0.4, 2.2), (0.1, 3.1)))
        dp = p.differentiate(1)
        h = 1e-6
        for x in np.linspace(-10, 10, 23):
            fd = (p.eval(x + h) - p.eval(x - h)) / (2 * h)
            assert dp.eval(x) == pytest.approx(fd, rel=1e-6, abs=1e-12)

    def test_sign_flip_under_s_differentiations(self):
        # odd-order differentiation flips every coefficient sign
        for s in (1, 2, 3):
            p = u_poly(s, 3.0)
            base = [math.copysign(1, c) for c in p.coefficients]
            got = [math.copysign(1, c) for c in p.differentiate(s).coefficients]
            if s % 2 == 1:
                assert got == [-b for b in base]
            else:
                assert got == base


class TestSignChangeBound:
    def test_one_alternation(self):
        assert ExpPoly(((1.0, 1.0), (-1.0, 2.0))).sign_change_bound() == 1

    def test_single_term_has_no_roots(self):
        p = ExpPoly(((4.0, 3.0),))
        assert p.sign_change_bound() == 0
        assert p.isolate_roots(-10, 10).isolated_roots == ()

    def test_parallel_difference_bound(self):
        # coefficient signs "+,-,-,+" (or "+,-,+" when the middle rates
        # merge at lam = 2) always bound the roots by 2
        assert u_poly(2, 2.0).sign_change_bound() == 2
        assert u_poly(2, 3.0).sign_change_bound() == 2
        assert u_poly(3, 1.5).sign_change_bound() == 2


class TestIsolateRoots:
    def test_simple_crossing_at_zero(self):
        p = ExpPoly(((1.0, 1.0), (-1.0, 2.0)))
        rep = p.isolate_roots(-5.0, 5.0)
        assert len(rep.isolated_roots) == 1
        lo, hi = rep.isolated_roots[0]
        assert hi - lo <= 1e-12
        assert lo <= 0.0 <= hi
        assert not rep.residual_uncertainty

    def test_slope_numerator_of_parallel_system(self):
        # numerator controlling the rate monotonicity at s = 2, lam = 2:
        # at most one real root
        lam, s = 2.0, 2
        q = ExpPoly((
            (-((lam - 1) ** 2) / lam ** (s - 1), lam + 1.0),
            (lam ** 2 / (lam + 1.0) ** (s - 1), lam + 2.0),
            (1.0 / (lam ** 2 + lam) ** (s - 1), 2 * lam + 1.0),
        ))
        rep = q.isolate_roots(0.0 + 1e-9, 20.0)
        assert rep.sign_change_bound == 1
        assert len(rep.isolated_roots) <= 1
        # q(0) = 1 here and the limit sign is negative: exactly one root
        assert len(rep.isolated_roots) == 1

    def test_crossing_average_function_has_positive_root(self):
        lam = 2.0
        p = ExpPoly((
            (-(1.0 / lam - 1.0 / (lam + 1)), 1.0),
            (1.0 / lam, lam),
            (-1.0 / (lam + 1.0), lam + 1.0),
        ))
        rep = p.isolate_roots(1e-9, 20.0)
        assert len(rep.isolated_roots) == 1
        lo, hi = rep.isolated_roots[0]
        assert lo > 0.0

    def test_known_root_location(self):
        # e^{-2x} - 0.9 e^{-x} vanishes exactly at -log(0.9)
        p = ExpPoly(((1.0, 2.0), (-0.9, 1.0)))
        rep = p.isolate_roots(-5, 5)
        assert len(rep.isolated_roots) == 1
        lo, hi = rep.isolated_roots[0]
        assert lo <= -math.log(0.9) <= hi
        assert hi - lo <= 1e-12


class TestSignPatternExact:
    def test_tail_dominance_difference_is_positive(self):
        pat = u_poly(2, 2.0).sign_pattern_exact(0.0)
        assert pat.signs == ("+",)
        assert pat.confidence == EXACT

    def test_dominance_positive_across_orders(self):
        for s in (1, 2, 3, 4):
            for lam in (1.5, 2.0, 5.0):
                assert u_poly(s, lam).sign_pattern_exact(0.0).signs == ("+",)

    def test_plus_minus_pattern(self):
        # e^{-x} + e^{-2x} - e^{-3x} - e^{-x/2} rises from 0 then decays
        # below: one change, "+,-"
        h = ExpPoly(((1.0, 1.0), (1.0, 2.0), (-1.0, 3.0), (-1.0, 0.5)))
        pat = h.sign_pattern_exact(0.0)
        assert pat.signs == ("+", "-")

    def test_single_term(self):
        assert ExpPoly(((1.0, 1.0),)).sign_pattern_exact(0.0).signs == ("+",)
        assert ExpPoly(((-2.0, 1.0),)).sign_pattern_exact(0.0).signs == ("-",)

    def test_positive_scaling_invariance(self):
        p = ExpPoly(((1.0, 0.5), (-3.0, 1.5), (1.0, 2.5)))
        base = p.sign_pattern_exact(0.0)
        scaled = p.scaled(7.25).sign_pattern_exact(0.0)
        assert base.signs == scaled.signs
        assert base.witnesses == scaled.witnesses

    def test_negation_flips_all_signs(self):
        p = ExpPoly(((1.0, 0.5), (-3.0, 1.5), (1.0, 2.5)))
        pat = p.sign_pattern_exact(0.0)
        neg = (-p).sign_pattern_exact(0.0)
        flip = {"+": "-", "-": "+"}
        assert neg.signs == tuple(flip[s] for s in pat.signs)


class TestRootBoundSweep:
    def test_random_polynomials_respect_bound(self):
        rng = np.random.default_rng(20240817)
        for _ in range(200):
            n = rng.integers(2, 7)
            rates = np.sort(rng.uniform(0.1, 10.0, n))
            # enforce distinctness beyond the merge tolerance
            rates += np.arange(n) * 1e-6
            coefs = rng.uniform(-5.0, 5.0, n)
            coefs[np.abs(coefs) < 0.05] = 0.05
            p = ExpPoly(tuple(zip(coefs, rates)))
            rep = p.isolate_roots(0.0 + 1e-9, p.dominance_horizon(0.0) + 1.0)
            assert len(rep.isolated_roots) <= rep.sign_change_bound

    def test_roots_verified_by_evaluation(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            n = rng.integers(2, 6)
            rates = np.sort(rng.uniform(0.2, 8.0, n)) + np.arange(n) * 1e-5
            coefs = rng.uniform(-4.0, 4.0, n)
            coefs[np.abs(coefs) < 0.1] = 0.1
            p = ExpPoly(tuple(zip(coefs, rates)))
            rep = p.isolate_roots(1e-9, p.dominance_horizon(0.0) + 1.0)
            if rep.residual_uncertainty:
                continue
            for lo, hi in rep.isolated_roots:
                # sign change across the interval unless tangential
                va, vb = p.eval(lo - 1e-7), p.eval(hi + 1e-7)
                mid = p.eval(0.5 * (lo + hi))
                assert abs(mid) < max(abs(va), abs(vb)) + 1e-12
