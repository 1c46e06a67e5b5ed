"""Spherical harmonics in the Condon-Shortley convention.

Y_lm(theta, phi) = (-1)^m sqrt((2l+1)(l-m)!/(4 pi (l+m)!)) P_l^m(cos theta) e^{i m phi}

for m >= 0, with Y_{l,-m} = (-1)^m conj(Y_{l,m}).  The evaluation is split so
that hot loops can feed it cos(theta) and sin(theta) e^{i phi} directly: the
associated Legendre factor is reduced to the polynomial part

    S_lm(x) = P_l^m(x) / (1 - x^2)^{m/2}

(computed by the standard degree recurrence) and the (sin theta e^{i phi})^m
factor is attached as an integer power of a complex number.  No inverse trig
or square roots are needed along the way, which matters in the distribution
kernels where this is evaluated billions of times.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["ylm", "ylm_from_rotation", "ylm_normalization"]


def ylm_normalization(l: int, m: int) -> float:
    """sqrt((2l+1)(l-|m|)!/(4 pi (l+|m|)!))."""
    am = abs(m)
    if am > l:
        raise ValueError(f"|m| = {am} exceeds l = {l}")
    return math.sqrt((2 * l + 1) * math.factorial(l - am)
                     / (4.0 * math.pi * math.factorial(l + am)))


def _legendre_poly_part(l: int, m: int, x):
    """S_lm(x) = P_l^m(x)/(1-x^2)^{m/2} for m >= 0, Condon-Shortley included."""
    # S_mm = (-1)^m (2m-1)!!
    s_prev = (-1.0) ** m * float(math.prod(range(1, 2 * m, 2)) or 1)
    if np.ndim(x) > 0:
        s_prev = np.full(np.shape(x), s_prev)
    if l == m:
        return s_prev
    s_cur = x * (2 * m + 1) * s_prev
    for ll in range(m + 2, l + 1):
        s_cur, s_prev = ((2 * ll - 1) * x * s_cur - (ll - 1 + m) * s_prev) / (ll - m), s_cur
    return s_cur


def ylm_from_rotation(l: int, m: int, costheta, sin_exp_iphi):
    """Y_lm given cos(theta) and the complex number sin(theta) e^{i phi}.

    Both arguments may be numpy arrays of the same shape.
    """
    am = abs(m)
    base = ylm_normalization(l, m) * _legendre_poly_part(l, am, costheta)
    if am == 0:
        return base + 0.0j
    se = sin_exp_iphi if m > 0 else np.conj(sin_exp_iphi)
    pw = se
    for _ in range(am - 1):
        pw = pw * se
    if m < 0:
        base = base * (-1.0) ** am
    return base * pw


def ylm(l: int, m: int, theta, phi):
    """Y_lm(theta, phi); scalar or array arguments."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    se = np.sin(theta) * np.exp(1j * phi)
    out = np.asarray(ylm_from_rotation(l, m, np.cos(theta), se))
    return complex(out) if out.ndim == 0 else out
