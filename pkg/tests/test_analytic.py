import math

import numpy as np
import pytest
from scipy.integrate import quad

from s2paths import (antipodal_closed_form, fourier_coeff,
                     legendre_cos_expansion, leading_magnitude,
                     poisson_antipodal, projection_quadrature,
                     semiclassical_projection)
from s2paths.errors import DomainError

from conftest import legendre_recurrence

# closed forms of the projection coefficients for l = 0..4
EXPECTED_TERMS = {
    0: {-1: math.sqrt(math.pi / 2)},
    1: {-1: math.sqrt(6 * math.pi) / 4},
    2: {-1: 3 * math.sqrt(10 * math.pi) / 16, 23: math.sqrt(2 * math.pi) / 32},
    3: {-1: 5 * math.sqrt(14 * math.pi) / 32, 39: math.sqrt(6 * math.pi) / 64},
    4: {-1: 105 * math.sqrt(2 * math.pi) / 256,
        55: 5 * math.sqrt(10 * math.pi) / 512,
        79: 29 * math.sqrt(2 * math.pi) / 2048},
}


class TestLegendreCosExpansion:
    def test_lowest_orders(self):
        assert legendre_cos_expansion(0) == {0: pytest.approx(1.0)}
        assert legendre_cos_expansion(1) == {1: pytest.approx(1.0)}

    def test_matches_recurrence_oracle(self):
        rng = np.random.default_rng(1)
        ts = rng.uniform(0, math.pi, 100)
        for l in range(9):
            coeffs = legendre_cos_expansion(l)
            for t in ts:
                val = sum(c * math.cos(k * t) for k, c in coeffs.items())
                assert val == pytest.approx(legendre_recurrence(l, math.cos(t)),
                                            abs=1e-12)

    def test_parity_selection(self):
        assert all((1 + k) % 2 == 0 for k in legendre_cos_expansion(1))
        assert all((4 + k) % 2 == 0 for k in legendre_cos_expansion(4))


class TestFourierCoeff:
    def test_mu_zero_closed_form(self):
        assert fourier_coeff(0) == pytest.approx((1 + 1j) / 2, abs=1e-14)

    @staticmethod
    def _numeric(nu):
        def f(g, part):
            v = math.sqrt(abs(math.sin(g))) \
                * np.exp(-0.5j * math.pi * math.floor(g / math.pi)) \
                * np.exp(-0.5j * nu * g)
            return v.real if part == 0 else v.imag
        out = 0.0
        for k in range(4):  # split at the |sin|^(1/2) kinks
            re, _ = quad(lambda g: f(g, 0), k * math.pi, (k + 1) * math.pi,
                         limit=200, epsabs=1e-12)
            im, _ = quad(lambda g: f(g, 1), k * math.pi, (k + 1) * math.pi,
                         limit=200, epsabs=1e-12)
            out += re + 1j * im
        return out / (4 * math.pi)

    @pytest.mark.parametrize("mu", [0, 1, 2, 3])
    def test_matches_oscillatory_quadrature(self, mu):
        assert fourier_coeff(mu) == pytest.approx(self._numeric(4 * mu - 1), abs=1e-8)

    @pytest.mark.parametrize("nu", [0, 1, 2, 4, 5, -2, -5])
    def test_other_modes_vanish(self, nu):
        assert abs(self._numeric(nu)) < 1e-10


class TestSemiclassicalProjection:
    @pytest.mark.parametrize("l", sorted(EXPECTED_TERMS))
    def test_closed_form_coefficients(self, l):
        res = semiclassical_projection(l)
        got = {round(f): c for c, f in res.terms}
        assert set(got) == set(EXPECTED_TERMS[l])
        for f, expect in EXPECTED_TERMS[l].items():
            assert got[f].real == pytest.approx(expect, abs=1e-10)
            assert abs(got[f].imag) < 1e-14

    def test_leading_frequency_is_minus_one(self):
        for l in range(9):
            assert semiclassical_projection(l).terms[0][1] == -1.0

    @pytest.mark.parametrize("l", range(9))
    def test_leading_magnitude_closed_form(self, l):
        lead = semiclassical_projection(l).leading
        assert abs(lead) == pytest.approx(leading_magnitude(l), abs=1e-10)

    def test_magnitude_limits(self):
        assert leading_magnitude(0) == pytest.approx(1.2533141373155, abs=1e-10)
        for l in range(1, 12):
            assert abs(leading_magnitude(l) - 1.0) < 0.10
        assert leading_magnitude(12) < leading_magnitude(1)

    def test_subleading_scale(self):
        # subleading-to-leading ratio sits at the few-percent scale
        for l in (2, 3, 4):
            res = semiclassical_projection(l)
            ratio = abs(res.terms[1][0]) / abs(res.leading)
            assert 0.02 < ratio < 0.12

    def test_l_limit_guard(self):
        with pytest.raises(DomainError):
            semiclassical_projection(13)


class TestProjectionQuadrature:
    @pytest.mark.slow
    def test_stationary_phase_error_decay(self):
        # compare against the assembled terms with the Gaussian-window
        # damping of each stationary point applied; the residual is the
        # genuine stationary-phase error, O(T^{-1/2})
        l, eps = 1, 1e-4
        res = semiclassical_projection(l)
        errs = []
        for T in (100.0, 400.0, 1600.0):
            q = projection_quadrature(l, T, eps)
            damped = sum(c * np.exp(1j * f * T / 8.0)
                         * math.exp(-0.5 * eps * (l * (l + 1) - f / 4.0) * T)
                         for c, f in res.terms)
            errs.append(abs(q - damped))
        for T, err in zip((100.0, 400.0, 1600.0), errs):
            assert err < 0.5 / math.sqrt(T)
        assert errs[0] > errs[1] > errs[2]


class TestAntipodalClosedForm:
    def test_equals_poisson_summed_series(self):
        for T in (3.0, 10.0, 32 * math.pi):
            for eps in (0.0, 1e-3, 0.05):
                a = antipodal_closed_form(T, 120, eps)
                b = poisson_antipodal(T, 120, eps)
                assert abs(a - b) <= 1e-14 * max(1.0, abs(b))

    def test_alternating_parity_factor(self):
        # removing the (-1)^l factor changes the sum entirely
        T = 5.0
        l = np.arange(121)
        half = l + 0.5
        plain = np.sum(half * np.exp(-0.5j * half * half * T * (1 - 1e-3j)))
        alt = np.sum(np.where(l % 2 == 0, 1, -1) * half
                     * np.exp(-0.5j * half * half * T * (1 - 1e-3j)))
        got = poisson_antipodal(T, 120, 1e-3)
        assert got == pytest.approx(
            complex(np.exp(1j * T * (1 - 1e-3j) / 8) / (2 * math.pi) * alt), abs=1e-12)
        assert abs(alt - plain) > 1.0
