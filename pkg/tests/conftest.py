"""Shared oracle helpers for the test suite.

All oracles here are independent of the library's production code paths:
adaptive quadrature on singularity-removing substitutions, brute-force
searches, and closed-form references.  They exist to pin expected values;
the library never calls them.
"""

import math

import numpy as np
from scipy.integrate import quad


def adaptive_winding_edge(gamma: float, width: float, n: int, T: float) -> complex:
    """Adaptive quadrature of the first-interval winding integrand.

    Substitutes alpha = gamma + u^2, which removes the inverse-square-root
    edge singularity, and uses the product form of cos(gamma) - cos(alpha)
    to avoid cancellation.
    """
    def f(u, part):
        if u <= 0.0:
            return 0.0
        u2 = u * u
        an = gamma + u2 + 2.0 * math.pi * n
        # (a + gamma)/2 = gamma + u^2/2 and (a - gamma)/2 = u^2/2 evaluated
        # without the cancelling subtraction
        gap = 2.0 * math.sin(gamma + 0.5 * u2) * math.sin(0.5 * u2)
        val = an * np.exp(1j * an * an / (2.0 * T)) * 2.0 * u / math.sqrt(gap)
        return val.real if part == 0 else val.imag
    um = math.sqrt(width)
    re, _ = quad(lambda u: f(u, 0), 0.0, um, limit=800, epsabs=1e-14, epsrel=1e-12)
    im, _ = quad(lambda u: f(u, 1), 0.0, um, limit=800, epsabs=1e-14, epsrel=1e-12)
    return re + 1j * im


def adaptive_winding_term(gamma: float, n: int, T: float) -> complex:
    """Adaptive quadrature of one full winding integral, with prefactors.

    Reference for exact_term: (-1)^n e^{iT/8} times the alpha integral from
    gamma to pi on the singularity-removing substitution.
    """
    def f(u, part):
        if u <= 0.0:
            return 0.0
        u2 = u * u
        an = gamma + u2 + 2.0 * math.pi * n
        gap = 2.0 * math.sin(gamma + 0.5 * u2) * math.sin(0.5 * u2)
        val = an * np.exp(1j * an * an / (2.0 * T)) * 2.0 * u / math.sqrt(gap)
        return val.real if part == 0 else val.imag
    um = math.sqrt(math.pi - gamma)
    re, _ = quad(lambda u: f(u, 0), 0.0, um, limit=2000, epsabs=1e-13, epsrel=1e-13)
    im, _ = quad(lambda u: f(u, 1), 0.0, um, limit=2000, epsabs=1e-13, epsrel=1e-13)
    sign = -1.0 if n % 2 else 1.0
    return sign * np.exp(1j * T / 8.0) * (re + 1j * im)


def adaptive_tilt_edge(theta_g: float, width: float) -> float:
    """Adaptive quadrature of the boundary tilt-kernel integral.

    integral over [theta_g, theta_g + width] of
    sin(theta_f)/sqrt(cos^2 theta_g - cos^2 theta_f).
    """
    if theta_g == 0.0:
        return width  # integrand reduces to 1 exactly
    def f(tf):
        gap = math.cos(theta_g) ** 2 - math.cos(tf) ** 2
        return math.sin(tf) / math.sqrt(max(gap, 1e-300))
    val, _ = quad(f, theta_g, theta_g + width, limit=800, epsabs=1e-13)
    return val


def brute_force_decompose(gamma_tilde: float) -> tuple[float, int]:
    """Search n in [-12, 12] for gamma in [0, pi] with |gamma + 2 pi n| = |gt|."""
    target = abs(gamma_tilde)
    for n in range(-12, 13):
        for sign in (1.0, -1.0):
            gamma = sign * target - 2.0 * math.pi * n
            if -1e-12 <= gamma <= math.pi + 1e-12:
                return min(max(gamma, 0.0), math.pi), n
    raise AssertionError(f"no decomposition found for {gamma_tilde}")


def legendre_recurrence(l: int, x: float) -> float:
    """P_l(x) by the three-term recurrence."""
    p0, p1 = 1.0, x
    if l == 0:
        return p0
    for k in range(2, l + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1


def segment_angle_sum(points: np.ndarray, torsion_indices) -> float:
    """Sum of segment internal angles measured from the sampled points.

    Each segment's circumradius is estimated from three spread samples and
    every chord is converted to its central angle; independent of the
    library's geometry formulas.
    """
    bounds = [0, *torsion_indices, len(points) - 1]
    total = 0.0
    for a, b in zip(bounds[:-1], bounds[1:]):
        seg = points[a:b + 1]
        p, q, r = seg[0], seg[len(seg) // 2], seg[-1]
        ab, bc, ca = np.linalg.norm(q - p), np.linalg.norm(r - q), np.linalg.norm(r - p)
        area = 0.5 * np.linalg.norm(np.cross(q - p, r - p))
        radius = ab * bc * ca / (4.0 * area)
        chords = np.linalg.norm(np.diff(seg, axis=0), axis=1)
        total += float(np.sum(2.0 * np.arcsin(np.clip(chords / (2.0 * radius), 0, 1))))
    return total
