import math

import numpy as np
import pytest
from scipy.integrate import quad

from s2paths import (MidpointGrid, NonFiniteError, alpha_edge_estimate,
                     lprime_interval_count, midpoint_integrate,
                     thetaf_edge_estimate)

from conftest import adaptive_tilt_edge, adaptive_winding_edge

T32 = 32 * math.pi


class TestMidpointIntegrate:
    def test_constant(self):
        for count in (1, 7, 64):
            grid = MidpointGrid(0.0, 1.0, count)
            assert midpoint_integrate(lambda u: np.ones_like(u), grid) == pytest.approx(1.0)

    def test_linear_exact_single_interval(self):
        grid = MidpointGrid(0.0, 2.0, 1)
        assert midpoint_integrate(lambda u: u, grid) == pytest.approx(2.0)

    def test_oscillatory_against_adaptive_oracle(self):
        re, _ = quad(lambda u: math.cos(u * u), 0, 5, limit=400, epsabs=1e-12)
        im, _ = quad(lambda u: math.sin(u * u), 0, 5, limit=400, epsabs=1e-12)
        grid = MidpointGrid(0.0, 5.0, 4096)
        got = midpoint_integrate(lambda u: np.exp(1j * u * u), grid)
        assert abs(got - (re + 1j * im)) / abs(re + 1j * im) < 1e-6

    def test_richardson_ratio_second_order(self):
        # halving the width shrinks the error by about 4 for smooth integrands
        exact = math.e - 1.0
        errs = [abs(midpoint_integrate(lambda u: np.exp(u), MidpointGrid(0, 1, n)) - exact)
                for n in (64, 128, 256)]
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)
        assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.05)

    def test_nodes_never_on_boundary(self):
        nodes = MidpointGrid(0.0, 1.0, 9).nodes()
        assert nodes.min() > 0.0 and nodes.max() < 1.0

    def test_nonfinite_raises(self):
        grid = MidpointGrid(0.0, 1.0, 8)
        with pytest.raises(NonFiniteError), np.errstate(divide="ignore"):
            midpoint_integrate(lambda u: 1.0 / (u - u[3]), grid)


class TestAlphaEdgeEstimate:
    def test_reference_point(self):
        # measured accuracy of the estimator at the example point; the
        # first-order form carries an O(width) bias of about 1.3e-3 here
        oracle = adaptive_winding_edge(0.5, 0.01, 0, T32)
        est = alpha_edge_estimate(0.5, 0.01, 0, T32)
        assert abs(est - oracle) / abs(oracle) < 2e-3

    def test_converges_with_width(self):
        rels = []
        for width in (0.01, 0.002, 0.0005):
            oracle = adaptive_winding_edge(0.5, width, 0, T32)
            est = alpha_edge_estimate(0.5, width, 0, T32)
            rels.append(abs(est - oracle) / abs(oracle))
        assert rels[0] > rels[1] > rels[2]
        assert rels[2] < 2e-4

    def test_finite_and_continuous_at_collapsed_separation(self):
        vals = [alpha_edge_estimate(g, 0.01, 0, T32) for g in (1e-3, 1e-6, 0.0)]
        assert all(np.isfinite(v) for v in vals)
        assert abs(vals[1] - vals[2]) < 1e-4 * abs(vals[2])

    def test_beats_first_order_form(self):
        # the shifted estimator improves on the unshifted expansion for n = 0
        def eq60(gamma, width, n, T):
            an = gamma + 2 * math.pi * n
            return an * np.exp(1j * an * an / (2 * T)) * 2 * math.sqrt(width) \
                / math.sqrt(math.sin(gamma))
        for gamma, width in [(0.5, 0.01), (0.3, 0.05), (1.2, 0.05), (0.05, 0.01)]:
            oracle = adaptive_winding_edge(gamma, width, 0, T32)
            e_new = abs(alpha_edge_estimate(gamma, width, 0, T32) - oracle)
            e_old = abs(eq60(gamma, width, 0, T32) - oracle)
            assert e_new < e_old

    def test_finite_where_true_integral_diverges(self):
        # n != 0 with collapsed separation: the exact integral grows without
        # bound (principal value handled by node symmetry downstream), the
        # estimator stays bounded by design
        assert np.isfinite(alpha_edge_estimate(0.0, 0.01, 3, T32))

    def test_crossover_documented(self):
        # near gamma ~ width the first-order bias peaks at the percent scale;
        # this pins the measured crossover rather than asserting a bound from
        # the formula's derivation
        oracle = adaptive_winding_edge(0.002, 0.01, 0, T32)
        est = alpha_edge_estimate(0.002, 0.01, 0, T32)
        rel = abs(est - oracle) / abs(oracle)
        assert 1e-3 < rel < 0.1


class TestThetafEdgeEstimate:
    def test_reference_point(self):
        oracle = adaptive_tilt_edge(math.pi / 4, 0.01)
        est = thetaf_edge_estimate(math.pi / 4, 0.01)
        assert abs(est - oracle) / oracle < 1e-2

    def test_finite_at_zero_tilt_where_unshifted_vanishes(self):
        est = thetaf_edge_estimate(0.0, 0.01)
        assert est == pytest.approx(math.sqrt(2 * 0.01 * math.tan(0.005)))
        assert est > 0.0
        # the unshifted first-order estimate sqrt(2 d tan(theta_g)) is 0 here
        assert math.sqrt(2 * 0.01 * math.tan(0.0)) == 0.0
        # and the true kernel integral is d (integrand -> 1)
        assert est == pytest.approx(adaptive_tilt_edge(0.0, 0.01), rel=1e-2)

    def test_lower_and_upper_boundaries_match(self):
        # the kernel is symmetric under theta_f -> pi - theta_f, so one
        # estimate serves both boundary intervals
        theta_g, width = 0.6, 0.02
        def upper_kernel(tf):
            gap = math.cos(theta_g) ** 2 - math.cos(tf) ** 2
            return math.sin(tf) / math.sqrt(max(gap, 1e-300))
        upper, _ = quad(upper_kernel, math.pi - theta_g - width, math.pi - theta_g,
                        limit=800, epsabs=1e-13)
        lower = adaptive_tilt_edge(theta_g, width)
        assert upper == pytest.approx(lower, rel=1e-9)
        assert thetaf_edge_estimate(theta_g, width, "lower") \
            == thetaf_edge_estimate(theta_g, width, "upper") \
            == pytest.approx(lower, rel=1e-2)


class TestLprimeIntervalCount:
    def test_reference_values(self):
        assert lprime_interval_count(T32, 0.0) == 51
        assert lprime_interval_count(T32, 4.0) == 121

    def test_monotone_in_momentum(self):
        counts = [lprime_interval_count(T32, lc) for lc in np.linspace(0, 8, 30)]
        assert all(b >= a for a, b in zip(counts[:-1], counts[1:]))
