import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from s2paths import (DomainError, SphericalPoint, angular_separation,
                     decompose_extended, geodesic_tilt, maslov_index,
                     rotate_to_global, tilt_to_phi0)
from s2paths.geom import decompose_extended_array, rotation_coefficients

from conftest import brute_force_decompose


class TestAngularSeparation:
    def test_coincident(self):
        p = SphericalPoint(0.7, 1.1)
        assert angular_separation(p, p) == 0.0

    def test_antipodal_poles(self):
        assert angular_separation(SphericalPoint(0.0, 0.3),
                                  SphericalPoint(math.pi, 2.0)) == pytest.approx(math.pi)

    def test_quarter_turn_on_equator(self):
        # independent 3-vector dot product oracle
        p0 = SphericalPoint(math.pi / 2, 0.0)
        pf = SphericalPoint(math.pi / 2, math.pi / 2)
        oracle = math.acos(float(p0.unit_vector() @ pf.unit_vector()))
        assert angular_separation(p0, pf) == pytest.approx(oracle, abs=1e-15)
        assert angular_separation(p0, pf) == pytest.approx(math.pi / 2)

    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi),
           st.floats(0, math.pi), st.floats(0, 2 * math.pi))
    def test_matches_vector_oracle(self, t0, f0, t1, f1):
        p0, p1 = SphericalPoint(t0, f0), SphericalPoint(t1, f1)
        dot = min(1.0, max(-1.0, float(p0.unit_vector() @ p1.unit_vector())))
        # arccos conditioning near +-1 limits agreement to ~sqrt(eps)
        assert angular_separation(p0, p1) == pytest.approx(math.acos(dot), abs=2e-7)

    def test_theta_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            SphericalPoint(3.5, 0.0)


class TestDecomposeExtended:
    def test_first_branch(self):
        d = decompose_extended(math.pi / 2)
        assert (d.gamma, d.n) == (math.pi / 2, 0)

    def test_positive_winding(self):
        d = decompose_extended(2.5 * math.pi)
        g, n = brute_force_decompose(2.5 * math.pi)
        assert d.gamma == pytest.approx(g) and d.n == n == 1

    def test_negative_extended_angle(self):
        d = decompose_extended(-1.5 * math.pi)
        g, n = brute_force_decompose(-1.5 * math.pi)
        assert d.gamma == pytest.approx(0.5 * math.pi) == pytest.approx(g)
        assert d.n == n == -1

    def test_fig3_sequence(self):
        # winding numbers over consecutive pi-intervals from -5pi to 5pi
        mids = (np.arange(10) - 4.5) * math.pi
        ns = [decompose_extended(gt).n for gt in mids]
        assert ns == [2, -2, 1, -1, 0, 0, -1, 1, -2, 2]

    def test_n_pair(self):
        for gt, expect in [(0.3, 0), (-0.3, 0), (7.0, 1), (-7.0, 1), (13.0, 2)]:
            assert decompose_extended(gt).n_pair == expect

    @given(st.floats(-20 * math.pi, 20 * math.pi))
    @settings(max_examples=500)
    def test_identity_property(self, gt):
        d = decompose_extended(gt)
        assert 0.0 <= d.gamma <= math.pi
        assert abs(d.gamma + 2 * math.pi * d.n) == pytest.approx(abs(gt), abs=1e-10)
        assert d.n_pair == math.floor(abs(d.n + 0.5))

    def test_bulk_identity(self):
        rng = np.random.default_rng(42)
        gt = rng.uniform(-20 * math.pi, 20 * math.pi, 10**6)
        gamma, n = decompose_extended_array(gt)
        assert np.all((gamma >= 0) & (gamma <= math.pi))
        assert np.max(np.abs(np.abs(gamma + 2 * math.pi * n) - np.abs(gt))) < 1e-10

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            decompose_extended(math.inf)


class TestRotateToGlobal:
    def test_zero_rotation_returns_final_point(self):
        th, ph = rotate_to_global(0.0, 1.2, 0.8, 2.1)
        assert (th, ph) == (pytest.approx(0.8), pytest.approx(2.1))

    def test_geodesic_through_pole(self):
        for t in (0.2, 1.0, 2.5, math.pi):
            th, ph = rotate_to_global(t, 0.0, 0.0, 0.0)
            assert th == pytest.approx(t, abs=1e-12)

    def test_full_great_circle_closure(self):
        # composing rotation matrices numerically: 2 pi returns the start
        for Phi in (0.0, 0.7, 2.0, 3.1):
            th, ph = rotate_to_global(2 * math.pi, Phi, 1.1, 0.6)
            assert th == pytest.approx(1.1, abs=1e-9)
            assert math.cos(ph - 0.6) == pytest.approx(1.0, abs=1e-9)

    @given(st.floats(0.05, math.pi - 0.05), st.floats(0, 2 * math.pi),
           st.floats(0.05, math.pi - 0.05), st.floats(0, 2 * math.pi))
    @settings(max_examples=100)
    def test_round_trip_recovers_start(self, t0, f0, tf, ff):
        # travel from (tf, ff) by the separation toward p0 lands on p0
        p0 = SphericalPoint(t0, f0)
        pf = SphericalPoint(tf, ff)
        gamma = angular_separation(p0, pf)
        # azimuth of p0 in the frame attached to pf
        cf, sf = math.cos(ff), math.sin(ff)
        ct, stf = math.cos(tf), math.sin(tf)
        u = p0.unit_vector()
        local = np.array([
            ct * (cf * u[0] + sf * u[1]) - stf * u[2],
            -sf * u[0] + cf * u[1],
            stf * (cf * u[0] + sf * u[1]) + ct * u[2],
        ])
        Phi = math.atan2(local[1], local[0]) % (2 * math.pi)
        th, ph = rotate_to_global(gamma, Phi, tf, ff)
        got = SphericalPoint(th, ph).unit_vector()
        assert float(got @ u) == pytest.approx(1.0, abs=1e-10)

    def test_rotation_coefficients_match(self):
        gt, Phi, tf, ff = -7.3, 0.9, 1.2, 0.0
        a1, a2, b1, b2, b3 = rotation_coefficients(Phi, tf)
        s, c = math.sin(gt), math.cos(gt)
        th, ph = rotate_to_global(gt, Phi, tf, ff)
        assert a1 * s + a2 * c == pytest.approx(math.cos(th), abs=1e-12)
        se = (b1 * s + b2 * c) + 1j * (b3 * s)
        assert abs(se) == pytest.approx(math.sin(th), abs=1e-12)
        assert np.angle(se * np.exp(1j * ff)) % (2 * math.pi) == pytest.approx(ph, abs=1e-9)


class TestGeodesicTilt:
    def test_equatorial_final_point(self):
        # at theta_f = pi/2 the stable form gives cos(theta_g) = |cos Phi0|,
        # i.e. the tilt equals the azimuth: a meridian launch (Phi0 = 0) lies
        # in a plane through the z-axis, an equatorial launch (Phi0 = pi/2)
        # in the equator plane
        for Phi0 in (0.0, 0.4, 1.2, math.pi / 2):
            expect = math.acos(abs(math.cos(Phi0)))
            assert geodesic_tilt(Phi0, math.pi / 2) == pytest.approx(expect, abs=1e-12)

    def test_quarter_azimuth(self):
        assert geodesic_tilt(math.pi / 2, 0.3) == pytest.approx(0.3)

    def test_zero_azimuth(self):
        assert geodesic_tilt(0.0, 0.3) == pytest.approx(0.0, abs=1e-12)

    @given(st.floats(0, math.pi / 2), st.floats(0.01, math.pi - 0.01))
    def test_range(self, Phi0, tf):
        tg = geodesic_tilt(Phi0, tf)
        assert 0.0 <= tg <= math.pi / 2 + 1e-12

    def test_monotone_in_phi0(self):
        tf = 1.1
        grid = np.linspace(0.0, math.pi / 2, 40)
        tilts = [geodesic_tilt(p, tf) for p in grid]
        assert all(b >= a - 1e-12 for a, b in zip(tilts[:-1], tilts[1:])) or \
            all(b <= a + 1e-12 for a, b in zip(tilts[:-1], tilts[1:]))
        # spec orientation: non-increasing in the tilt complement means the
        # tilt itself grows with Phi0 toward pi/2; pin the endpoints
        assert tilts[0] == pytest.approx(0.0, abs=1e-12)
        assert tilts[-1] == pytest.approx(min(tf, math.pi - tf))


class TestTiltToPhi0:
    def test_max_tilt_gives_quarter(self):
        assert tilt_to_phi0(0.4, 0.4) == pytest.approx(math.pi / 2)

    @given(st.floats(0.01, math.pi / 2 - 0.01))
    @settings(max_examples=60)
    def test_round_trip(self, Phi0):
        tf = 1.0
        assert tilt_to_phi0(geodesic_tilt(Phi0, tf), tf) == pytest.approx(Phi0, abs=1e-9)

    def test_against_bisection_oracle(self):
        tf, tg = 1.0, 0.2
        lo, hi = 0.0, math.pi / 2
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if geodesic_tilt(mid, tf) < tg:
                lo = mid
            else:
                hi = mid
        assert tilt_to_phi0(tg, tf) == pytest.approx(0.5 * (lo + hi), abs=1e-10)

    def test_unreachable_tilt_rejected(self):
        with pytest.raises(DomainError):
            tilt_to_phi0(0.8, 0.4)  # cos^2 tg < cos^2 tf


class TestMaslovIndex:
    @pytest.mark.parametrize("gn,expect", [
        (math.pi / 2, 0), (1.5 * math.pi, 1), (-2.5 * math.pi, 2),
        (0.0, 0), (6 * math.pi + 0.1, 6),
    ])
    def test_values(self, gn, expect):
        assert maslov_index(gn) == expect
