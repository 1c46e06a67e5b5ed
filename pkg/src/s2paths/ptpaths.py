"""Semiclassical paths of the azimuthally decomposed propagator.

After azimuthal decomposition the polar motion is governed by the effective
1-D potential (m^2 - 1/4)/(2 sin^2 theta) (hbar = I = 1), a Poschl-Teller
well for |m| >= 1.  Paths take classical energy l(l+1)/2 (the constant -1/8
fluctuation term is excluded): theta oscillates between the turning angles
theta_0 and pi - theta_0 with half-period pi/sqrt(l(l+1)), closed form
theta(t) = arccos(cos theta_0 cos(sqrt(l(l+1)) t)), while phi advances so
that sin(theta) phi_dot = m, i.e. the azimuthal speed is constant.  The phi
quadrature is an incomplete elliptic integral with modulus above one; the
reciprocal-modulus reduction used here evaluates its imaginary part as a
real elliptic integral of modulus cos^2 theta_0.

These paths are qualitative by construction: their guarantees are the two
conservation laws and the periodicity, not any propagator value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ellipk, ellipkinc

from .errors import DomainError

__all__ = [
    "PTPathSpec",
    "PTPath",
    "pt_potential",
    "turning_angle",
    "time_of_theta",
    "phi_of_theta",
    "half_period",
    "half_period_phi",
    "pt_path",
]

_TOL = 1e-12


@dataclass(frozen=True)
class PTPathSpec:
    """State label and sampling resolution for one path."""

    l: int
    m: int
    periods: int
    samples_per_period: int

    def __post_init__(self):
        if abs(self.m) < 1:
            raise DomainError("azimuthal decomposition paths need |m| >= 1")
        if self.l < abs(self.m):
            raise DomainError("l must be at least |m|")
        if self.periods < 1 or self.samples_per_period < 2:
            raise DomainError("need at least one period and two samples per period")


@dataclass(frozen=True)
class PTPath:
    """Sampled path: times, angles, and unit vectors."""

    t: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    points: np.ndarray   # (N, 3)


def pt_potential(theta: float, m: int) -> float:
    """Effective polar potential -1/8 + (m^2 - 1/4)/(2 sin^2 theta)."""
    if m == 0:
        raise DomainError("m = 0 is not a Poschl-Teller case")
    if not 0.0 < theta < math.pi:
        raise DomainError("theta must lie strictly inside (0, pi)")
    s = math.sin(theta)
    return -0.125 + (m * m - 0.25) / (2.0 * s * s)


def turning_angle(l: int, m: int) -> float:
    """Inner turning angle theta_0 = arcsin(sqrt(m^2 - 1/4) / sqrt(l(l+1)))."""
    if abs(m) < 1 or l < abs(m):
        raise DomainError("need l >= |m| >= 1")
    return math.asin(math.sqrt((m * m - 0.25) / (l * (l + 1))))


def half_period(l: int, m: int) -> float:
    """Time from theta_0 to pi - theta_0: pi/sqrt(l(l+1))."""
    del m
    return math.pi / math.sqrt(l * (l + 1))


def _check_range(theta: float, th0: float):
    if theta < th0 - _TOL or theta > math.pi - th0 + _TOL:
        raise DomainError(
            f"theta {theta!r} outside the turning range [{th0!r}, {math.pi - th0!r}]")


def time_of_theta(theta: float, l: int, m: int) -> float:
    """First-half-period time at which the path reaches theta; t(theta_0) = 0."""
    th0 = turning_angle(l, m)
    _check_range(theta, th0)
    s = math.sqrt(l * (l + 1))
    inner = math.sin(theta) ** 2 - (m * m - 0.25) / (l * (l + 1))
    if inner < 1e-13:
        # rounding of the turning angle itself leaves a sqrt-conditioned
        # residue here; snap to the exact turning-point times
        return 0.0 if theta <= 0.5 * math.pi else math.pi / s
    return -math.atan2(math.cos(theta), math.sqrt(inner)) / s + 0.5 * math.pi / s


def phi_of_theta(theta: float, l: int, m: int) -> float:
    """Azimuth accumulated from theta_0 to theta over the first half-period.

    Equals -(m/sqrt(m^2 - 1/4)) times the imaginary part of the incomplete
    elliptic integral F(theta | l(l+1)/(m^2 - 1/4)), reduced to the real
    integral (m/s) [K(c^2) - F(pi/2 - u | c^2)] with c = cos theta_0 and
    u = arccos(cos theta / cos theta_0).
    """
    th0 = turning_angle(l, m)
    _check_range(theta, th0)
    s = math.sqrt(l * (l + 1))
    c = math.cos(th0)
    x = math.cos(theta) / c
    if x >= 1.0 - 1e-13:
        u = 0.0              # snap rounded turning angles to the endpoints
    elif x <= -1.0 + 1e-13:
        u = math.pi
    else:
        u = math.acos(x)
    return m / s * (ellipk(c * c) - ellipkinc(0.5 * math.pi - u, c * c))


def half_period_phi(l: int, m: int) -> float:
    """Azimuth advanced over one half-period."""
    c = math.cos(turning_angle(l, m))
    return 2.0 * m / math.sqrt(l * (l + 1)) * ellipk(c * c)


def pt_path(spec: PTPathSpec) -> PTPath:
    """Sample the path uniformly in time over the requested number of periods.

    Uniform-in-time sampling renders the near-pole kinks faithfully: the
    polar speed vanishes at the turning angles while the azimuthal speed
    stays constant.
    """
    l, m = spec.l, spec.m
    th0 = turning_angle(l, m)
    s = math.sqrt(l * (l + 1))
    c = math.cos(th0)
    c2 = c * c
    n = spec.periods * spec.samples_per_period
    t = np.linspace(0.0, spec.periods * 2.0 * math.pi / s, n + 1)
    u = s * t
    theta = np.arccos(c * np.cos(u))
    k_half = np.floor(u / math.pi)
    u_red = u - math.pi * k_half
    K = ellipk(c2)
    phi = m / s * (2.0 * K * k_half + (K - ellipkinc(0.5 * math.pi - u_red, c2)))
    st = np.sin(theta)
    points = np.column_stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])
    return PTPath(t=t, theta=theta, phi=phi, points=points)
