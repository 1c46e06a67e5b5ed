"""Spherical geometry and winding-number bookkeeping.

All angles are radians stored as double-precision floats.  A point on the
unit sphere is (theta, phi) with polar angle theta in [0, pi] and azimuth
phi normalised into [0, 2pi).  The extended angle ``gamma_tilde`` is the
signed total angular distance travelled along a great circle; it decomposes
into a principal separation gamma in [0, pi] plus an integer winding number
n with |gamma + 2*pi*n| = |gamma_tilde|.  The winding sequence as a function
of gamma_tilde is 0, -1, 1, -2, 2, ... per half-turn, which is specific to
the sphere (on the circle windings simply count full turns).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi

#: tolerance for clamping inverse-trig arguments that drift past +-1
ACOS_CLAMP_TOL = 1e-9


def _clamped_arccos(x: float) -> float:
    """arccos with rounding-noise clamping; DomainError beyond the tolerance."""
    if x > 1.0:
        if x > 1.0 + ACOS_CLAMP_TOL:
            raise DomainError(f"arccos argument {x!r} exceeds 1 beyond tolerance")
        x = 1.0
    elif x < -1.0:
        if x < -1.0 - ACOS_CLAMP_TOL:
            raise DomainError(f"arccos argument {x!r} below -1 beyond tolerance")
        x = -1.0
    return math.acos(x)


@dataclass(frozen=True)
class SphericalPoint:
    """Point on the unit sphere; phi is normalised into [0, 2pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (-ACOS_CLAMP_TOL <= self.theta <= math.pi + ACOS_CLAMP_TOL):
            raise DomainError(f"polar angle {self.theta!r} outside [0, pi]")
        object.__setattr__(self, "theta", min(max(self.theta, 0.0), math.pi))
        object.__setattr__(self, "phi", self.phi % TWO_PI)

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi),
                         math.cos(self.theta)])


@dataclass(frozen=True)
class WindingDecomposition:
    """Principal angle, winding number, and pairwise winding of an extended angle."""

    gamma: float
    n: int
    n_pair: int


def angular_separation(p0: SphericalPoint, pf: SphericalPoint) -> float:
    """Principal angle in [0, pi] between two points on the sphere."""
    dot = (math.cos(p0.theta) * math.cos(pf.theta)
           + math.sin(p0.theta) * math.sin(pf.theta) * math.cos(p0.phi - pf.phi))
    return _clamped_arccos(min(1.0, max(-1.0, dot)))


def _positive_mod(x: float, m: float) -> float:
    """Remainder in [0, m) regardless of the sign of x."""
    r = math.fmod(x, m)
    return r + m if r < 0.0 else r


def decompose_extended(gamma_tilde: float) -> WindingDecomposition:
    """Split an extended angle into (gamma, n) with |gamma + 2 pi n| = |gamma_tilde|.

    The modulo convention takes the positive remainder for negative
    arguments, so the identity holds for gamma_tilde of either sign.
    """
    if not math.isfinite(gamma_tilde):
        raise DomainError("extended angle must be finite")
    gamma = abs(_positive_mod(gamma_tilde - math.pi, TWO_PI) - math.pi)
    f2 = math.floor(gamma_tilde / TWO_PI)
    parity = _positive_mod(math.floor(gamma_tilde / math.pi), 2.0)
    n = int(f2 - (1 + 2 * f2) * parity)
    n_pair = int(math.floor(abs(n + 0.5)))
    return WindingDecomposition(gamma=gamma, n=n, n_pair=n_pair)


def decompose_extended_array(gamma_tilde: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised (gamma, n) decomposition; n is returned as a float array."""
    gt = np.asarray(gamma_tilde, dtype=float)
    gamma = np.abs(((gt - np.pi) % TWO_PI) - np.pi)
    f2 = np.floor(gt / TWO_PI)
    n = f2 - (1 + 2 * f2) * (np.floor(gt / np.pi) % 2)
    return gamma, n


def rotate_to_global(Theta: float, Phi: float, thetaf: float, phif: float) -> tuple[float, float]:
    """Map rotated-frame coordinates (Theta, Phi) to the original frame.

    The rotated frame is fixed to the final location (thetaf, phif) through
    a z-y-z Euler sequence with angles (phif, thetaf).  Theta may be any
    finite real (an extended angle); the result is the point reached by
    travelling Theta along the great circle leaving (thetaf, phif) in the
    azimuthal direction Phi of the rotated frame.
    """
    st, ct = math.sin(Theta), math.cos(Theta)
    costh = -math.sin(thetaf) * math.cos(Phi) * st + math.cos(thetaf) * ct
    theta = _clamped_arccos(costh)
    w1 = math.cos(thetaf) * math.cos(Phi) * st + math.sin(thetaf) * ct
    w2 = math.sin(Phi) * st
    u = math.cos(phif) * w1 - math.sin(phif) * w2
    v = math.sin(phif) * w1 + math.cos(phif) * w2
    if u == 0.0 and v == 0.0:
        # at a pole the azimuth is arbitrary; keep it deterministic
        return theta, 0.0
    return theta, math.atan2(v, u) % TWO_PI


def rotation_coefficients(Phi: float, thetaf: float) -> tuple[float, float, float, float, float]:
    """Linear coefficients of (sin Theta, cos Theta) in the rotated-frame map.

    With s = sin(Theta), c = cos(Theta) the transformed point satisfies

        cos(theta0)                   = a1*s + a2*c
        sin(theta0) exp(i(phi0-phif)) = (b1*s + b2*c) + i*(b3*s)

    which lets kernels evaluate spherical harmonics of the transformed point
    without inverse trig.
    """
    a1 = -math.sin(thetaf) * math.cos(Phi)
    a2 = math.cos(thetaf)
    b1 = math.cos(thetaf) * math.cos(Phi)
    b2 = math.sin(thetaf)
    b3 = math.sin(Phi)
    return a1, a2, b1, b2, b3


def geodesic_tilt(Phi0: float, thetaf: float) -> float:
    """Polar tilt theta_g in [0, pi/2] of the geodesic plane through (thetaf, .).

    Uses the form cos(theta_g) = sqrt(cos^2 thetaf + cos^2 Phi0 sin^2 thetaf),
    which is stable at thetaf = pi/2 where the tan form diverges.
    """
    c = math.sqrt(math.cos(thetaf) ** 2
                  + (math.cos(Phi0) * math.sin(thetaf)) ** 2)
    return _clamped_arccos(min(1.0, c))


def tilt_to_phi0(theta_g: float, thetaf: float) -> float:
    """Invert geodesic_tilt: the Phi0 in [0, pi/2] producing tilt theta_g.

    Requires cos^2 theta_g >= cos^2 thetaf (the tilt cannot be smaller than
    the final point allows); raises DomainError otherwise.
    """
    num = math.cos(theta_g) ** 2 - math.cos(thetaf) ** 2
    if num < 0.0:
        if num < -ACOS_CLAMP_TOL:
            raise DomainError(
                f"tilt {theta_g!r} unreachable from thetaf {thetaf!r}")
        num = 0.0
    return math.atan2(math.sin(theta_g), math.sqrt(num))


def maslov_index(gamma_n: float) -> int:
    """Number of focal-point passages along a great-circle arc of angle gamma_n."""
    if not math.isfinite(gamma_n):
        raise DomainError("angle must be finite")
    return int(math.floor(abs(gamma_n) / math.pi))
