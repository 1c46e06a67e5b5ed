"""Spherical elastica: circle-arc chains realising nonclassical path lengths.

A curve family is labelled by the endpoint separation gamma in [0, pi], a
winding number n, and a take-off angle beta in [0, pi].  The pairwise winding
n' = floor(|n + 1/2|) sets the number of torsion points N_tau = 2 n'.  The
initial point, final point, and torsion points all lie on a great circle in
the *torsion plane*, spaced by the segment angle Gamma; each arc between
consecutive points lies in a plane tilted by the dihedral angle beta about
the chord, with the tilt side alternating segment to segment.  The angular
length of a curve is the sum of the internal angles of its segments,
(N_tau + 1) * nu, which sweeps continuously from |gamma + 2 pi n| at beta = 0
to 2 pi (n'+1) - gamma at beta = pi.

The winding label switches from n = n' to n = -n'-1 at the critical take-off
angle beta_c at which the arcs pass through the poles of the torsion plane
(the planes of the segments contain the torsion-plane normal).  This is the
same point at which the fractional part of the in-plane winding measure w_tau
jumps from gamma/2pi to 1 - gamma/2pi, so the fractional-part classification
rule and the beta_c admissibility rule agree exactly.  beta_c is always
strictly between pi/2 and pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ConvergenceError, DegenerateError, DomainError

__all__ = [
    "ElasticaSpec",
    "ElasticaGeometry",
    "PolylineCurve",
    "geometry_from",
    "critical_takeoff",
    "takeoff_from_length",
    "sample_curve",
    "winding_measure",
    "classify_curve",
]

_BETA_TOL = 1e-9


@dataclass(frozen=True)
class ElasticaSpec:
    """Endpoint separation, winding number, and take-off angle of one curve."""

    gamma: float
    n: int
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= math.pi:
            raise DomainError(f"gamma {self.gamma!r} outside [0, pi]")
        if not 0.0 <= self.beta <= math.pi:
            raise DomainError(f"beta {self.beta!r} outside [0, pi]")


@dataclass(frozen=True)
class ElasticaGeometry:
    """Derived segment geometry of an elastica."""

    n_pair: int
    n_torsion: int
    segment_angle: float
    radius: float
    internal_angle: float
    total_length: float


@dataclass(frozen=True)
class PolylineCurve:
    """Sampled curve on the unit sphere with marked torsion-point indices."""

    points: np.ndarray          # (N, 3) unit vectors
    torsion_indices: tuple[int, ...]


def _branch_parameters(gamma: float, n: int) -> tuple[float, int, float]:
    """(|gamma_tilde|, n', Gamma) for the (gamma, n) family."""
    gt_abs = abs(gamma + 2.0 * math.pi * n)
    n_pair = int(math.floor(abs(n + 0.5)))
    segments = 2 * n_pair + 1
    return gt_abs, n_pair, gt_abs / segments


def _segment_geometry(Gamma: float, beta: float, positive_branch: bool) -> tuple[float, float]:
    """(radius rho, internal angle nu) of one segment."""
    ch = math.cos(0.5 * Gamma)
    rho = math.sqrt(math.sin(0.5 * Gamma) ** 2 + (math.cos(beta) * ch) ** 2)
    sgn = 1.0 if positive_branch else -1.0
    arg = sgn * math.cos(beta) * ch / rho
    nu = 2.0 * math.acos(min(1.0, max(-1.0, arg)))
    return rho, nu


def total_length_of(gamma: float, n: int, beta: float) -> float:
    """Angular length (N_tau + 1) * nu without the admissibility check."""
    _, n_pair, Gamma = _branch_parameters(gamma, n)
    _, nu = _segment_geometry(Gamma, beta, n >= 0)
    return (2 * n_pair + 1) * nu


def critical_takeoff(gamma: float, n_pair: int) -> float:
    """Critical take-off angle beta_c in (pi/2, pi) for the (gamma, n') family.

    Root of cos(beta) + sin(beta) |cos(Gamma/2)| = 0, the condition for the
    segment planes to contain the torsion-plane normal; bisection bracketed
    on [pi/2, pi] with a Newton polish.
    """
    if not 0.0 < gamma <= math.pi:
        raise DomainError("gamma must lie in (0, pi]")
    if n_pair < 0:
        raise DomainError("n_pair must be non-negative")
    _, _, Gamma = _branch_parameters(gamma, n_pair)
    c = abs(math.cos(0.5 * Gamma))

    def resid(b):
        return math.cos(b) + math.sin(b) * c

    lo, hi = 0.5 * math.pi, math.pi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if resid(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    else:
        raise ConvergenceError("beta_c bisection did not converge")
    b = 0.5 * (lo + hi)
    for _ in range(4):  # Newton polish; derivative never vanishes here
        b -= resid(b) / (-math.sin(b) + math.cos(b) * c)
    return b


def geometry_from(spec: ElasticaSpec) -> ElasticaGeometry:
    """Segment geometry of a consistent elastica specification.

    Raises ConsistencyError when the take-off angle falls on the wrong side
    of beta_c for the sign of the winding number.
    """
    gt_abs, n_pair, Gamma = _branch_parameters(spec.gamma, spec.n)
    if gt_abs < 1e-14:
        raise DomainError("degenerate curve: coincident endpoints with n = 0")
    beta_c = critical_takeoff(spec.gamma, n_pair)
    if spec.n >= 0 and spec.beta > beta_c + _BETA_TOL:
        raise ConsistencyError(
            f"n = {spec.n} >= 0 requires beta <= beta_c = {beta_c:.6f}")
    if spec.n < 0 and spec.beta < beta_c - _BETA_TOL:
        raise ConsistencyError(
            f"n = {spec.n} < 0 requires beta > beta_c = {beta_c:.6f}")
    rho, nu = _segment_geometry(Gamma, spec.beta, spec.n >= 0)
    return ElasticaGeometry(
        n_pair=n_pair,
        n_torsion=2 * n_pair,
        segment_angle=Gamma,
        radius=rho,
        internal_angle=nu,
        total_length=(2 * n_pair + 1) * nu,
    )


def takeoff_from_length(target_length: float, gamma: float, n: int) -> float:
    """Take-off angle whose curve has the requested angular length.

    The length is strictly monotone in beta over [0, pi], so the solution is
    unique; DomainError if the target lies outside the lengths attainable by
    curves carrying this winding label (beta <= beta_c for n >= 0, beta >
    beta_c for n < 0).
    """
    gt_abs, n_pair, _ = _branch_parameters(gamma, n)
    beta_c = critical_takeoff(gamma, n_pair) if gamma > 0.0 else 0.5 * math.pi
    lo_len = total_length_of(gamma, n, 0.0)
    hi_len = total_length_of(gamma, n, math.pi)
    split = total_length_of(gamma, n, beta_c)
    tol = 1e-9
    if n >= 0 and not (lo_len - tol <= target_length <= split + tol):
        raise DomainError(
            f"length {target_length!r} not attainable with n = {n} "
            f"(range [{lo_len:.6f}, {split:.6f}])")
    if n < 0 and not (split - tol <= target_length <= hi_len + tol):
        raise DomainError(
            f"length {target_length!r} not attainable with n = {n} "
            f"(range [{split:.6f}, {hi_len:.6f}])")
    lo, hi = 0.0, math.pi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if total_length_of(gamma, n, mid) < target_length:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    b = 0.5 * (lo + hi)
    # Newton polish on the length residual with a numerical derivative
    for _ in range(3):
        h = 1e-7
        f = total_length_of(gamma, n, b) - target_length
        df = (total_length_of(gamma, n, min(b + h, math.pi))
              - total_length_of(gamma, n, max(b - h, 0.0))) / (min(b + h, math.pi) - max(b - h, 0.0))
        if df == 0.0:
            break
        step = f / df
        if not 0.0 <= b - step <= math.pi:
            break
        b -= step
    return min(max(b, 0.0), math.pi)


def sample_curve(spec: ElasticaSpec, points_per_segment: int) -> PolylineCurve:
    """Sample the elastica as unit vectors, uniformly in segment angle.

    The frame puts the initial point on the x-axis with the torsion-plane
    normal along y.  Segment tilts alternate +beta/-beta starting with +,
    which keeps the take-off and approach angles equal (the segment count
    2n' + 1 is odd).
    """
    geo = geometry_from(spec)
    if points_per_segment < 1:
        raise DomainError("points_per_segment must be positive")
    nseg = geo.n_torsion + 1
    Gamma, rho, nu = geo.segment_angle, geo.radius, geo.internal_angle
    yhat = np.array([0.0, 1.0, 0.0])
    anchors = [np.array([math.cos(k * Gamma), 0.0, math.sin(k * Gamma)])
               for k in range(nseg + 1)]
    pieces = []
    for k in range(nseg):
        p0, p1 = anchors[k], anchors[k + 1]
        chord = p1 - p0
        e = chord / np.linalg.norm(chord)
        f = np.array([e[2], 0.0, -e[0]])          # in-plane normal of the chord
        side = 1.0 if k % 2 == 0 else -1.0
        g = math.cos(spec.beta) * f + side * math.sin(spec.beta) * yhat
        nrm = np.cross(e, g)
        nrm /= np.linalg.norm(nrm)
        centre = np.dot(nrm, p0) * nrm
        a = p0 - centre
        a /= np.linalg.norm(a)
        b = np.cross(nrm, a)
        t1 = p1 - centre
        t1 /= np.linalg.norm(t1)
        sweep = math.atan2(np.dot(t1, b), np.dot(t1, a)) % (2.0 * math.pi)
        if abs(sweep - nu) > abs((2.0 * math.pi - sweep) % (2.0 * math.pi) - nu):
            b = -b
        ts = np.linspace(0.0, nu, points_per_segment + 1)
        seg = centre + rho * (np.cos(ts)[:, None] * a + np.sin(ts)[:, None] * b)
        pieces.append(seg if k == 0 else seg[1:])
    points = np.vstack(pieces)
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    torsion = tuple(points_per_segment * (k + 1) for k in range(nseg - 1))
    return PolylineCurve(points=points, torsion_indices=torsion)


def _torsion_frame(p0: np.ndarray, pf: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed frame (x, y, z) with x along p0 and y normal to the torsion plane."""
    x = p0 / np.linalg.norm(p0)
    y = np.cross(x, pf)
    if np.linalg.norm(y) < 1e-12:
        # coincident or antipodal endpoints: any containing plane works
        seed = np.array([0.0, 0.0, 1.0]) if abs(x[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        y = np.cross(x, seed)
    y /= np.linalg.norm(y)
    return x, y, np.cross(x, y)


def winding_measure(curve: PolylineCurve) -> float:
    """Non-negative in-plane winding w_tau of the curve about the torsion axis.

    Midpoint-rule discretisation of the line integral of the winding 1-form
    in torsion-plane coordinates.  floor(w_tau) recovers the pairwise winding
    n'; the fractional part is gamma/2pi below the critical take-off angle
    and 1 - gamma/2pi above it.
    """
    pts = np.asarray(curve.points, dtype=float)
    if len(pts) < 2:
        raise DomainError("curve must contain at least two points")
    xhat, yhat, zhat = _torsion_frame(pts[0], pts[-1])
    x = pts @ xhat
    z = pts @ zhat
    r2 = x * x + z * z
    if np.any(r2 < 1e-20):
        raise DegenerateError("curve sample lies on the torsion-plane axis")
    xm = 0.5 * (x[1:] + x[:-1])
    zm = 0.5 * (z[1:] + z[:-1])
    num = xm * np.diff(z) - zm * np.diff(x)
    return abs(float(np.sum(num / (xm * xm + zm * zm)))) / (2.0 * math.pi)


def _endpoint_dihedral(pts: np.ndarray, yhat: np.ndarray, window: int) -> float:
    """|cos beta| from a total-least-squares plane fit over an endpoint window."""
    w = pts[:window]
    centred = w - w.mean(axis=0)
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    normal = vt[-1]
    return min(1.0, abs(float(normal @ yhat)))


def classify_curve(curve: PolylineCurve) -> tuple[int, float, float]:
    """Recover (n', beta, n) from a sampled curve.

    n' and n come from the winding measure and its fractional part; beta from
    the dihedral angle of endpoint-window plane fits against the torsion
    plane, averaged over the take-off and approach ends, with the beta versus
    pi - beta ambiguity settled by comparing the measured chord length of the
    curve against the two candidate segment geometries.
    """
    pts = np.asarray(curve.points, dtype=float)
    if len(pts) < 3:
        raise DomainError("need at least three points to classify")
    _, yhat, _ = _torsion_frame(pts[0], pts[-1])
    w = winding_measure(curve)
    n_pair = int(math.floor(w))
    frac = w - n_pair
    gamma = math.acos(min(1.0, max(-1.0, float(pts[0] @ pts[-1]))))
    n = n_pair if frac < 0.5 else -(n_pair + 1)
    window = max(3, len(pts) // ((2 * n_pair + 1) * 8))
    cosb = 0.5 * (_endpoint_dihedral(pts, yhat, window)
                  + _endpoint_dihedral(pts[::-1], yhat, window))
    b1 = math.acos(cosb)
    b2 = math.pi - b1
    measured = float(np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1)))
    _, npb, Gamma = _branch_parameters(gamma, n)
    best = b1
    err = None
    for cand in (b1, b2):
        rho, nu = _segment_geometry(Gamma, cand, n >= 0)
        pred = (2 * npb + 1) * rho * nu     # chordal length of dense samples
        e = abs(pred - measured)
        if err is None or e < err:
            err, best = e, cand
    return n_pair, best, n
