import math

import mpmath
import numpy as np
import pytest

from flowrisk.linalg import Spectrum
from flowrisk.shrinkage import (
    FlowKind,
    gf_shrink,
    hb_kernel,
    hb_kernel_complement,
    hb_shrink,
    nest_shrink,
    profile,
    ridge_shrink,
)

from oracles import j1_series

mpmath.mp.dps = 40


class TestGfShrink:
    def test_time_zero(self):
        assert gf_shrink(1.0, 0.0) == 1.0

    def test_unit_point(self):
        assert gf_shrink(1.0, 1.0) == pytest.approx(math.exp(-1.0), abs=1e-12)

    def test_null_direction(self):
        assert gf_shrink(0.0, 5.0) == 1.0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            gf_shrink(-1.0, 1.0)
        with pytest.raises(ValueError):
            gf_shrink(1.0, -1.0)

    def test_monotone_in_time(self):
        t = np.linspace(0, 20, 200)
        vals = gf_shrink(0.7, t)
        assert (np.diff(vals) <= 0).all()


class TestNestShrink:
    def test_time_zero_any_eigenvalue(self):
        for s in (0.0, 0.3, 5.0):
            assert nest_shrink(s, 0.0) == 1.0

    def test_null_direction_any_time(self):
        for t in (0.0, 1.0, 100.0):
            assert nest_shrink(0.0, t) == 1.0

    def test_unit_eigenvalue_t_two(self):
        assert nest_shrink(1.0, 2.0) == pytest.approx(j1_series(2.0), abs=1e-9)

    def test_small_time_taylor(self):
        # |g - (1 - t^2 s / 8)| <= 1e-6 * t^2 s when t sqrt(s) <= 1e-2
        for s, t in [(1e-4, 1.0), (1.0, 1e-2), (1e-2, 0.05)]:
            u2 = t * t * s
            assert u2 <= 1e-4 + 1e-12
            assert abs(nest_shrink(s, t) - (1.0 - u2 / 8.0)) <= 1e-6 * u2

    def test_dominated_by_gf_in_ill_conditioned_tail(self):
        # for s <= 1e-3, t >= 100 with t sqrt(s) >= 20 the Bessel kernel is
        # far below the exponential one
        for s in (1e-3, 5e-4):
            for t in (650.0, 900.0, 1500.0):
                if t * math.sqrt(s) < 20 or t < 100:
                    continue
                assert abs(nest_shrink(s, t)) < gf_shrink(s, t)

    def test_decay_envelope(self):
        u = np.linspace(10.0, 2000.0, 4000)
        vals = np.abs(nest_shrink(1.0, u))  # t sqrt(s) = u
        assert (vals <= 2.0 * u ** -1.5).all()


class TestHbShrink:
    def test_degenerate_eigenvalue_limit(self):
        assert hb_shrink(1.0, 1.0, 1.0) == pytest.approx(2.0 / math.e, abs=1e-10)

    def test_time_zero(self):
        for s, mu in [(1.0, 1.0), (2.0, 0.5), (10.0, 1e-3)]:
            assert hb_shrink(s, mu, 0.0) == 1.0

    def test_direct_value(self):
        expected = math.exp(-1.0) * (math.cos(1.0) + math.sin(1.0))
        assert hb_shrink(2.0, 1.0, 1.0) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(0.508326, abs=1e-5)

    def test_continuity_at_degenerate_eigenvalue(self):
        base = hb_shrink(1.0, 1.0, 3.0)
        gaps = [abs(hb_shrink(1.0 + d, 1.0, 3.0) - base)
                for d in (1e-4, 1e-6, 1e-8)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-8

    def test_domain_errors(self):
        with pytest.raises(ValueError, match="mu > 0"):
            hb_shrink(1.0, 0.0, 1.0)
        with pytest.raises(ValueError, match="s >= mu"):
            hb_shrink(0.5, 1.0, 1.0)


class TestRidgeShrink:
    def test_examples(self):
        assert ridge_shrink(1.0, 1.0) == 0.5
        assert ridge_shrink(1.0, 0.0) == 0.0
        assert ridge_shrink(0.0, 3.0) == 1.0

    def test_double_zero_rejected(self):
        with pytest.raises(ValueError):
            ridge_shrink(0.0, 0.0)

    def test_monotone_in_lambda(self):
        lam = np.linspace(0.0, 50.0, 300)
        vals = ridge_shrink(1.3, lam)
        assert (np.diff(vals) >= 0).all()


class TestHbKernelComplement:
    def test_matches_subtraction_at_moderate_arguments(self):
        a = np.linspace(0.2, 4.0, 40)
        b = np.linspace(0.0, 6.0, 40)
        aa, bb = np.meshgrid(a, b)
        direct = 1.0 - hb_kernel(aa, bb)
        assert np.abs(hb_kernel_complement(aa, bb) - direct).max() <= 1e-14

    def test_high_precision_at_tiny_arguments(self):
        # achievable absolute accuracy is O(eps * max(a, b^2)): the expm1
        # and a*sinc pieces each carry ~eps*a and cancel to order x^2
        for a, b in [(1e-6, 2e-6), (1e-4, 0.0), (0.0, 1e-5), (1e-7, 1e-7)]:
            ref = float(1 - mpmath.e ** (-mpmath.mpf(a))
                        * (mpmath.cos(mpmath.mpf(b))
                           + (mpmath.mpf(a) * mpmath.sinc(mpmath.mpf(b)))))
            got = hb_kernel_complement(a, b)
            assert abs(got - ref) <= 1e-15 * (a + b * b) + 1e-300


class TestProfile:
    def test_all_ones_at_zero(self, simple_spectrum):
        for kind in FlowKind:
            if kind is FlowKind.RIDGE:
                continue  # lambda = 0 is the unregularized limit, not a start
            prof = profile(simple_spectrum, kind, 0.0)
            assert np.array_equal(prof.factors, np.ones(4))

    def test_componentwise_gf(self):
        spec = Spectrum(np.array([0.0, 1.0]))
        prof = profile(spec, FlowKind.GRADIENT_FLOW, 1.0)
        assert prof.factors[0] == 1.0
        assert prof.factors[1] == pytest.approx(math.exp(-1.0), abs=1e-12)

    def test_componentwise_nest_series_oracle(self):
        spec = Spectrum(np.array([1.0, 4.0]))
        prof = profile(spec, FlowKind.ACCELERATED_FLOW, 2.0)
        assert prof.factors[0] == pytest.approx(j1_series(2.0), abs=1e-9)
        assert prof.factors[1] == pytest.approx(2 * j1_series(4.0) / 4.0, abs=1e-9)

    def test_unit_factor_exactly_at_null_directions(self):
        spec = Spectrum(np.array([0.0, 0.5]))
        for kind in (FlowKind.GRADIENT_FLOW, FlowKind.ACCELERATED_FLOW):
            assert profile(spec, kind, 7.5).factors[0] == 1.0
        assert profile(spec, FlowKind.RIDGE, 2.0).factors[0] == 1.0

    def test_bounded_factors(self, simple_spectrum):
        for kind in (FlowKind.GRADIENT_FLOW, FlowKind.ACCELERATED_FLOW,
                     FlowKind.RIDGE):
            for param in (0.1, 1.0, 10.0, 500.0):
                factors = profile(simple_spectrum, kind, param).factors
                assert (np.abs(factors) <= 1.0 + 1e-12).all()

    def test_ridge_zero_lambda_error_names_index(self):
        spec = Spectrum(np.array([0.0, 1.0]))
        with pytest.raises(ValueError, match="index 0"):
            profile(spec, FlowKind.RIDGE, 0.0)

    def test_heavy_ball_requires_positive_mu(self):
        spec = Spectrum(np.array([0.0, 1.0]))
        with pytest.raises(ValueError, match="mu > 0"):
            profile(spec, FlowKind.HEAVY_BALL_FLOW, 1.0)

    def test_kind_parse_tokens(self):
        assert FlowKind.parse("gf") is FlowKind.GRADIENT_FLOW
        assert FlowKind.parse("AcceleratedFlow") is FlowKind.ACCELERATED_FLOW
        assert FlowKind.parse("heavy_ball_flow") is FlowKind.HEAVY_BALL_FLOW
        with pytest.raises(ValueError):
            FlowKind.parse("sgd")
