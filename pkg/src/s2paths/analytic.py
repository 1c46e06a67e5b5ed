"""Closed-form cross-checks of the semiclassical eigenstate projection.

Projecting the semiclassical propagator onto a polar-axis eigenstate reduces,
by stationary phase in the long-time limit, to a finite double sum over the
cosine expansion of the Legendre polynomial and the Fourier modes of the
half-integer-period prefactor.  Each surviving stationary point contributes a
complex coefficient at a frequency that is an integer multiple of T/8 (units
hbar = I = 1); the leading term always sits at frequency -1 with magnitude
Gamma(l + 3/2) / (sqrt(l + 1/2) Gamma(l + 1)).  A direct-quadrature form of
the same projection is provided so the stationary-phase error, O(T^{-1/2}),
can be exhibited numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import binom, eval_legendre, gamma as gamma_fn

from .errors import DomainError

__all__ = [
    "ProjectionResult",
    "legendre_cos_expansion",
    "fourier_coeff",
    "semiclassical_projection",
    "leading_magnitude",
    "projection_quadrature",
    "antipodal_closed_form",
]

_L_MAX = 12


@dataclass(frozen=True)
class ProjectionResult:
    """Stationary-phase projection sum_j c_j exp(i f_j T/8)."""

    l: int
    terms: tuple[tuple[complex, float], ...]   # (coefficient, frequency)

    def evaluate(self, T: float) -> complex:
        return sum(c * np.exp(1j * f * T / 8.0) for c, f in self.terms)

    @property
    def leading(self) -> complex:
        return self.terms[0][0]


def legendre_cos_expansion(l: int) -> dict[int, float]:
    """Coefficients c_k with P_l(cos t) = sum_k c_k cos(k t), l + k even."""
    if l < 0:
        raise DomainError("l must be non-negative")
    coeffs = {}
    for k in range(l % 2, l + 1, 2):
        c = ((-1.0) ** (l + k)) * (2.0 - (1.0 if k == 0 else 0.0)) / 4.0 ** l \
            * binom(l - k, (l - k) / 2) * binom(l + k, (l + k) / 2)
        coeffs[k] = float(c)
    return coeffs


def fourier_coeff(mu: int) -> complex:
    """Fourier coefficient a_mu of |sin g|^{1/2} e^{-i pi floor(g/pi)/2}.

    The expansion runs over exp(i nu g / 2) with nu = 4 mu - 1; all other
    modes vanish.  mu = 0 gives (1 + i)/2.
    """
    if mu < 0:
        raise DomainError("mu must be non-negative")
    nu = 4 * mu - 1
    return -(1.0 + 1j) * gamma_fn((nu + 5) / 4.0 - 1.5) \
        / (4.0 * math.sqrt(math.pi) * gamma_fn((nu + 5) / 4.0))


def leading_magnitude(l: int) -> float:
    """Closed-form magnitude of the leading projection term."""
    return gamma_fn(l + 1.5) / (math.sqrt(l + 0.5) * gamma_fn(l + 1.0))


def semiclassical_projection(l: int, T: float = 0.0) -> ProjectionResult:
    """Assemble the stationary-phase projection for eigenstate l.

    Stationary points with negative characteristic momentum are dropped by
    the Heaviside selection; contributions landing at the same frequency are
    merged.  Terms are ordered by increasing frequency, so the leading
    (frequency -1) term comes first.
    """
    if not 0 <= l <= _L_MAX:
        raise DomainError(f"l must lie in [0, {_L_MAX}] (factorial growth)")
    del T  # coefficients are T-independent; kept for call-site symmetry
    terms: dict[float, complex] = {}
    for k, _ck in legendre_cos_expansion(l).items():
        base = ((-1.0) ** (l + k + 1)) * (2.0 - (1.0 if k == 0 else 0.0)) / 4.0 ** (l + 1) \
            * binom(l - k, (l - k) / 2) * binom(l + k, (l + k) / 2)
        for mu in range(0, l + 1):
            gfac = gamma_fn(mu - 0.5) / gamma_fn(mu + 1.0)
            for s in (+1.0, -1.0):
                stationary = -(2.0 * mu + s * k - 0.5)
                if stationary <= 0.0:
                    continue
                freq = 4.0 * (l * (l + 1) - (2.0 * mu + s * k - 0.5) ** 2)
                c = base * gfac * math.sqrt(stationary)
                terms[freq] = terms.get(freq, 0.0) + c
    ordered = tuple((complex(terms[f]), f) for f in sorted(terms))
    return ProjectionResult(l=l, terms=ordered)


def projection_quadrature(l: int, T: float, epsilon: float = 1e-4) -> complex:
    """Direct midpoint quadrature of the eigenstate projection integral.

    Evaluates e^{i E_l T} / (i T) times the extended-angle integral of
    |sin g|^{1/2} P_l(cos g) g^{1/2} e^{-i pi floor(g/pi)/2} e^{i g^2/2T},
    regularised by T -> T(1 - i epsilon) which cuts the integrand off at
    g ~ sqrt(2 T W / epsilon).  The node spacing tracks the endpoint phase
    rate g_max/T so the oscillation stays resolved.  Note the Gaussian
    window also damps each stationary point by exp(-epsilon L_c^2 T / 2);
    comparisons against the assembled stationary-phase terms must apply the
    same damping per term.
    """
    Tc = T * (1.0 - 1j * epsilon)
    g_max = math.sqrt(2.0 * T * 40.0 / epsilon)
    dg = min(0.05, 0.2 * T / g_max)
    count = int(math.ceil(g_max / dg))
    dg = g_max / count
    chunk = 1 << 20
    E_l = 0.5 * l * (l + 1)
    total = 0.0 + 0.0j
    for start in range(0, count, chunk):
        g = (np.arange(start, min(start + chunk, count)) + 0.5) * dg
        maslov = np.exp(-0.5j * math.pi * np.floor(g / math.pi))
        vals = (np.sqrt(np.abs(np.sin(g))) * eval_legendre(l, np.cos(g))
                * np.sqrt(g) * maslov * np.exp(1j * g * g / (2.0 * Tc)))
        total += vals.sum() * dg
    return complex(np.exp(1j * E_l * T) / (1j * T) * total)


def antipodal_closed_form(T: float, l_max: int, epsilon: float = 0.0) -> complex:
    """Antipodal propagator assembled through the shifted-index summation.

    Same series as the Poisson-summed antipodal propagator, built from the
    half-odd-integer momentum sum over k with l = k - 1 folding; must agree
    with it to round-off.
    """
    Tc = T * (1.0 - 1j * epsilon)
    k = np.arange(-l_max, l_max + 2)
    half = k - 0.5
    terms = np.where(k % 2 == 0, 1.0, -1.0) * half * np.exp(-0.5j * half * half * Tc)
    # the Gaussian moment integral carries an overall minus:
    # int z e^{ibz} e^{iz^2/2T} dz = -bT sqrt(2 pi i T) e^{-i b^2 T/2}
    return complex(-np.exp(1j * Tc / 8.0) / (4.0 * math.pi) * terms.sum())
