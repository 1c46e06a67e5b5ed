"""Path distributions for orbital angular momentum eigenstates.

The pipeline expresses a spherical-harmonic eigenstate as an integral of
propagator amplitudes over path endpoints, then reads off distributions over
the characteristic angular momentum L_c = -I*gamma_tilde/T of the endpoint
pair and over the polar tilt theta_Lc of the endpoint geodesic plane.  Units
are hbar = I = 1.

The innermost object is the window kernel

    dJ(L_c, Phi0, theta_f, phi_f) = pref * integral over a momentum window
        |sin(L' T)| Y_lm(theta_0, phi_0) (-1)^n  IntAlpha(gamma, n)  dL'

where the window is L_c +- sqrt(1/T), the extended angle gamma_tilde = -L'T
fixes (gamma, n) by the winding decomposition, (theta_0, phi_0) is the point
reached by travelling gamma_tilde from (theta_f, phi_f) along azimuth Phi0,
and IntAlpha is the singular-endpoint path-angle integral (midpoint grid with
the edge estimator on its first interval).  Everything downstream (the
wave-function reconstruction, the L_c distribution, the bivariate and tilt
distributions, sum rules, and the L_c-range scan) is a weighted sum of this
kernel over midpoint grids.

Two facts shape the implementation:

* The expensive factor |sin| * (-1)^n * IntAlpha depends only on
  gamma_tilde, never on the angular variables, so it is computed once per
  momentum node ("the kernel").
* For fixed gamma_tilde the transformed point is linear in
  (sin gamma_tilde, cos gamma_tilde), so any fixed weighted sum of Y_lm over
  angular nodes is a trigonometric polynomial of degree l in gamma_tilde.
  Each angular quadrature is therefore collapsed once into its 2l+1 Fourier
  coefficients (sampled exactly via a DFT) and evaluated per momentum node
  at polynomial cost.  This reorganises the arithmetic but keeps the
  quadrature rule itself bit-for-bit the paper's midpoint scheme; a direct
  per-node summation is kept alongside for cross-checks.

Work is partitioned into fixed-size blocks of momentum (or curve) nodes and
partial results are combined in block order, so results are byte-identical
for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, NonFiniteError
from .geom import decompose_extended_array, rotation_coefficients
from .harmonics import ylm, ylm_from_rotation
from .quadrature import lprime_interval_count, thetaf_edge_estimate

__all__ = [
    "StateLabel",
    "RunConfig",
    "DistributionCurve",
    "KappaScanResult",
    "delta_J",
    "reconstruct_wavefunction",
    "p1_distribution",
    "bivariate_p",
    "p2_distribution",
    "sum_rule",
    "kappa_scan",
]

_KERNEL_CHUNK = 1 << 15       # momentum nodes per vectorised kernel chunk
_BLOCK = 256                  # curve/momentum nodes per scheduling block
_GAMMA_PI_TOL = 1e-9


@dataclass(frozen=True)
class StateLabel:
    """Eigenstate quantum numbers l >= 0, |m| <= l."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise DomainError(f"invalid state (l={self.l}, m={self.m})")


@dataclass(frozen=True)
class RunConfig:
    """Grids and ranges controlling one experiment; fully serialisable.

    kappa = None resolves to 4 for the (0,0) state and 3 otherwise.  epsilon
    is kept for the spectral-sum commands; the distribution pipeline itself
    needs no regularisation because the L_c range is finite.
    """

    state: StateLabel = field(default_factory=lambda: StateLabel(0, 0))
    T: float = 32.0 * math.pi
    kappa: float | None = None
    n_alpha: int = 64
    n_thetaf: int = 32
    n_phif: int = 1
    n_phi0: int = 64
    dLc: float = 0.001
    epsilon: float = 0.0

    def __post_init__(self):
        if self.T <= 0.0:
            raise DomainError("T must be positive")
        if self.kappa is not None and self.kappa <= 0.0:
            raise DomainError("kappa must be positive")
        for name in ("n_alpha", "n_thetaf", "n_phif", "n_phi0"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be a positive integer")
        if self.n_thetaf < 2:
            raise DomainError("n_thetaf must be at least 2 (two edge intervals)")
        if self.dLc <= 0.0:
            raise DomainError("dLc must be positive")
        if not 0.0 <= self.epsilon <= 0.1:
            raise DomainError("epsilon must lie in [0, 0.1]")

    def resolved_kappa(self) -> float:
        if self.kappa is not None:
            return self.kappa
        return 4.0 if (self.state.l, self.state.m) == (0, 0) else 3.0

    def lc_halfwidth(self) -> float:
        return self.resolved_kappa() * (self.state.l + 0.5)

    def to_dict(self) -> dict:
        return {
            "l": self.state.l, "m": self.state.m, "T": self.T,
            "kappa": self.resolved_kappa(), "n_alpha": self.n_alpha,
            "n_thetaf": self.n_thetaf, "n_phif": self.n_phif,
            "n_phi0": self.n_phi0, "dLc": self.dLc, "epsilon": self.epsilon,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        return cls(state=StateLabel(int(d["l"]), int(d["m"])),
                   T=float(d.get("T", 32.0 * math.pi)),
                   kappa=None if d.get("kappa") is None else float(d["kappa"]),
                   n_alpha=int(d.get("n_alpha", 64)),
                   n_thetaf=int(d.get("n_thetaf", 32)),
                   n_phif=int(d.get("n_phif", 1)),
                   n_phi0=int(d.get("n_phi0", 64)),
                   dLc=float(d.get("dLc", 0.001)),
                   epsilon=float(d.get("epsilon", 0.0)))


@dataclass(frozen=True)
class DistributionCurve:
    """Sampled distribution with its grid and the config that produced it."""

    axis: np.ndarray
    values: np.ndarray
    config: RunConfig
    kind: str = ""

    def __post_init__(self):
        if len(self.axis) != len(self.values):
            raise DomainError("axis and values must have equal length")
        if np.any(np.diff(self.axis) <= 0):
            raise DomainError("axis must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteError("distribution values must be finite")


@dataclass(frozen=True)
class KappaScanResult:
    """Per-kappa tilt distributions plus their window mean."""

    kappas: tuple[float, ...]
    curves: tuple[DistributionCurve, ...]
    mean: DistributionCurve


# ---------------------------------------------------------------------------
# momentum-window kernel
# ---------------------------------------------------------------------------

def _prefactor(l: int, T: float) -> complex:
    return np.exp(0.5j * (l + 0.5) ** 2 * T) / (math.sqrt(2.0) * math.pi * 1j) \
        * (1.0 / (2j * math.pi * T)) ** 0.5


def _window_gamma_tilde(T: float, L_c: float) -> tuple[np.ndarray, float]:
    """Extended angles of the momentum-window midpoint nodes and the node width."""
    count = lprime_interval_count(T, L_c)
    width = 2.0 / math.sqrt(T)
    dLp = width / count
    lp = L_c - 0.5 * width + (np.arange(count) + 0.5) * dLp
    return -lp * T, dLp


def _alpha_kernel(gt: np.ndarray, T: float, n_alpha: int) -> np.ndarray:
    """|sin gt| * (-1)^n * IntAlpha(gamma, n) for every extended angle.

    IntAlpha is the path-angle integral on an n_alpha midpoint grid with the
    edge estimate replacing its first interval; it vanishes when the
    principal separation reaches pi (empty range).
    """
    gt = np.asarray(gt, dtype=float)
    out = np.zeros(gt.shape, dtype=complex)
    for start in range(0, len(gt), _KERNEL_CHUNK):
        sl = slice(start, min(start + _KERNEL_CHUNK, len(gt)))
        g, n = decompose_extended_array(gt[sl])
        live = (math.pi - g) > _GAMMA_PI_TOL
        gl, nl = g[live], n[live]
        da = (math.pi - gl) / n_alpha
        a_eff = gl + 0.25 * da + 2.0 * math.pi * nl
        edge = a_eff * np.exp(1j * a_eff * a_eff / (2.0 * T)) \
            * 2.0 * np.sqrt(da) / np.sqrt(np.sin(gl + 0.125 * da))
        idx = np.arange(1, n_alpha)
        alpha = gl[:, None] + (idx + 0.5) * da[:, None]
        an = alpha + 2.0 * math.pi * nl[:, None]
        vals = an * np.exp(1j * an * an / (2.0 * T)) \
            / np.sqrt(2.0 * np.sin(0.5 * (alpha + gl[:, None]))
                      * np.sin(0.5 * (alpha - gl[:, None])))
        integral = edge + vals.sum(axis=1) * da
        signed = np.where(nl % 2 == 0, 1.0, -1.0) * integral
        chunk = np.zeros(g.shape, dtype=complex)
        chunk[live] = signed
        out[sl] = np.abs(np.sin(gt[sl])) * chunk
    return out


# ---------------------------------------------------------------------------
# angular quadratures and their trigonometric collapse
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _AngularSet:
    """Weighted angular nodes with the rotated-frame linear coefficients.

    For node a and extended angle g the transformed point satisfies
    cos(theta0) = a1*sin g + a2*cos g and sin(theta0) e^{i(phi0 - phif)} =
    (b1*sin g + b2*cos g) + i*(b3*sin g); the stored weight already includes
    every gamma-independent factor (quadrature weights, metric terms, the
    conjugated harmonic at the endpoint, and e^{i m phif}).
    """

    l: int
    m: int
    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    b3: np.ndarray
    weight: np.ndarray

    def evaluate(self, gt: np.ndarray) -> np.ndarray:
        """Direct weighted sum over angular nodes for each extended angle."""
        s = np.sin(gt)[:, None]
        c = np.cos(gt)[:, None]
        costh = self.a1 * s + self.a2 * c
        se = (self.b1 * s + self.b2 * c) + 1j * (self.b3 * s)
        y = ylm_from_rotation(self.l, self.m, costh, se)
        return (y * self.weight).sum(axis=1)

    def collapse(self) -> np.ndarray:
        """Exact Fourier coefficients of the degree-l trig polynomial above."""
        mm = 2 * self.l + 1
        samples = self.evaluate(2.0 * math.pi * np.arange(mm) / mm)
        return np.fft.fft(samples) / mm


def _eval_collapsed(coeff: np.ndarray, gt: np.ndarray) -> np.ndarray:
    """Evaluate sum_d coeff_d e^{i d gt} from the DFT coefficient layout."""
    mm = len(coeff)
    l = (mm - 1) // 2
    z = np.cos(gt) + 1j * np.sin(gt)
    out = np.full(gt.shape, coeff[0], dtype=complex)
    zp = np.ones_like(z)
    for d in range(1, l + 1):
        zp = zp * z
        out += coeff[d] * zp + coeff[mm - d] * np.conj(zp)
    return out


def _phi0_grid(cfg: RunConfig) -> tuple[np.ndarray, float]:
    d = math.pi / cfg.n_phi0
    return (np.arange(cfg.n_phi0) + 0.5) * d, d


def _phif_grid(cfg: RunConfig) -> tuple[np.ndarray, float]:
    d = 2.0 * math.pi / cfg.n_phif
    return (np.arange(cfg.n_phif) + 0.5) * d, d


def _thetaf_grid(cfg: RunConfig) -> tuple[np.ndarray, float]:
    d = math.pi / cfg.n_thetaf
    return (np.arange(cfg.n_thetaf) + 0.5) * d, d


def _angular_set_from_nodes(l: int, m: int, phi0, thetaf, phif, weight) -> _AngularSet:
    arrs = [np.empty(len(phi0)) for _ in range(5)]
    for i, (P, tf, pf) in enumerate(zip(phi0, thetaf, phif)):
        a1, a2, b1, b2, b3 = rotation_coefficients(P, tf)
        arrs[0][i], arrs[1][i], arrs[2][i], arrs[3][i], arrs[4][i] = a1, a2, b1, b2, b3
    w = np.asarray(weight, dtype=complex) * np.exp(1j * m * np.asarray(phif, dtype=float))
    return _AngularSet(l=l, m=m, a1=arrs[0], a2=arrs[1], b1=arrs[2],
                       b2=arrs[3], b3=arrs[4], weight=w)


def _p1_angular_set(cfg: RunConfig) -> _AngularSet:
    """Nodes and weights of the Phi0 x theta_f x phi_f quadrature of the
    L_c distribution, including sin(theta_f) and conj(Y_lm(theta_f, phi_f))."""
    l, m = cfg.state.l, cfg.state.m
    P0, dP0 = _phi0_grid(cfg)
    TF, dTF = _thetaf_grid(cfg)
    PF, dPF = _phif_grid(cfg)
    phi0, thetaf, phif, weight = [], [], [], []
    for P in P0:
        for tf in TF:
            for pf in PF:
                phi0.append(P)
                thetaf.append(tf)
                phif.append(pf)
                weight.append(dP0 * dTF * dPF * math.sin(tf)
                              * np.conj(ylm(l, m, tf, pf)))
    return _angular_set_from_nodes(l, m, phi0, thetaf, phif, weight)


def _reconstruct_angular_set(cfg: RunConfig, thetaf: float, phif: float) -> _AngularSet:
    """Phi0 quadrature only; the endpoint stays fixed."""
    l, m = cfg.state.l, cfg.state.m
    P0, dP0 = _phi0_grid(cfg)
    n = len(P0)
    return _angular_set_from_nodes(
        l, m, P0, np.full(n, thetaf), np.full(n, phif), np.full(n, dP0))


def _p2_angular_set(cfg: RunConfig, theta_Lc: float) -> _AngularSet:
    """theta_f x phi_f quadrature of the bivariate distribution at one tilt.

    theta_f runs over [theta_g, pi - theta_g] on a midpoint grid whose two
    boundary intervals are replaced by the edge estimate; each node carries
    both azimuth branches Phi0 and pi - Phi0.  Weights include the geodesic
    change-of-variables factor and the momentum-window averaging width.
    """
    l, m = cfg.state.l, cfg.state.m
    if not 0.0 <= theta_Lc <= 0.5 * math.pi:
        raise DomainError("theta_Lc must lie in [0, pi/2]")
    theta_g = 0.5 * math.pi - theta_Lc
    span = math.pi - 2.0 * theta_g
    if span <= 0.0:
        raise DomainError("empty theta_f range at theta_Lc = 0")
    d = span / cfg.n_thetaf
    PF, dPF = _phif_grid(cfg)
    avg = 2.0 / math.sqrt(cfg.T)          # the delta-L averaging width
    cg2 = math.cos(theta_g) ** 2
    phi0, thetaf, phif, weight = [], [], [], []
    for k in range(cfg.n_thetaf):
        tf = theta_g + (k + 0.5) * d
        root2 = cg2 - math.cos(tf) ** 2
        root = math.sqrt(max(root2, 0.0))
        if k == 0 or k == cfg.n_thetaf - 1:
            wk = thetaf_edge_estimate(theta_g, d) / avg
        else:
            wk = d * math.sin(tf) / (avg * root)
        P = math.atan2(math.sin(theta_g), root)
        for branch_P in (P, math.pi - P):
            for pf in PF:
                phi0.append(branch_P)
                thetaf.append(tf)
                phif.append(pf)
                weight.append(wk * dPF * np.conj(ylm(l, m, tf, pf)))
    return _angular_set_from_nodes(l, m, phi0, thetaf, phif, weight)


# ---------------------------------------------------------------------------
# public kernel operations
# ---------------------------------------------------------------------------

def delta_J(L_c: float, Phi0: float, thetaf: float, phif: float,
            cfg: RunConfig) -> complex:
    """Momentum-window kernel at a single endpoint/azimuth configuration."""
    l, m = cfg.state.l, cfg.state.m
    gt, dLp = _window_gamma_tilde(cfg.T, L_c)
    kern = _alpha_kernel(gt, cfg.T, cfg.n_alpha)
    a1, a2, b1, b2, b3 = rotation_coefficients(Phi0, thetaf)
    s, c = np.sin(gt), np.cos(gt)
    costh = a1 * s + a2 * c
    se = (b1 * s + b2 * c) + 1j * (b3 * s)
    y = ylm_from_rotation(l, m, costh, se) * np.exp(1j * m * phif)
    value = _prefactor(l, cfg.T) * np.sum(kern * y) * dLp
    if not np.isfinite(value):
        raise NonFiniteError("delta_J produced a non-finite value")
    return complex(value)


def _lc_grid(cfg: RunConfig, half: bool, negative: bool = False) -> np.ndarray:
    """Midpoint L_c grid over the configured range (full or one sign)."""
    hw = cfg.lc_halfwidth()
    if half:
        count = max(1, int(round(hw / cfg.dLc)))
        nodes = (np.arange(count) + 0.5) * (hw / count)
        return -nodes[::-1] if negative else nodes
    count = max(1, int(round(2.0 * hw / cfg.dLc)))
    return -hw + (np.arange(count) + 0.5) * (2.0 * hw / count)


def _blocks(n: int) -> list[slice]:
    return [slice(s, min(s + _BLOCK, n)) for s in range(0, n, _BLOCK)]


def _run_blocks(worker, payloads: list, threads: int | None):
    """Run block payloads in order, serially or on a process pool."""
    if threads is None or threads <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, payloads))


# --- wave-function reconstruction -----------------------------------------

def _reconstruct_block(payload) -> complex:
    cfg, thetaf, phif, lc_nodes = payload
    aset = _reconstruct_angular_set(cfg, thetaf, phif)
    coeff = aset.collapse()
    acc = 0.0 + 0.0j
    for L_c in lc_nodes:
        gt, dLp = _window_gamma_tilde(cfg.T, L_c)
        kern = _alpha_kernel(gt, cfg.T, cfg.n_alpha)
        acc += np.sum(kern * _eval_collapsed(coeff, gt)) * dLp
    return acc


def reconstruct_wavefunction(thetaf: float, phif: float, cfg: RunConfig,
                             threads: int | None = None) -> complex:
    """Rebuild Y_lm(thetaf, phif) from the kernel; the eigenstate identity.

    The discrete-comb average is realised analytically as a continuous
    integral over L_c; see reconstruct_wavefunction_comb for the raw comb.
    """
    lc = _lc_grid(cfg, half=False)
    payloads = [(cfg, thetaf, phif, lc[b]) for b in _blocks(len(lc))]
    partials = _run_blocks(_reconstruct_block, payloads, threads)
    total = 0.0 + 0.0j
    for p in partials:
        total += p
    scale = cfg.dLc / (2.0 / math.sqrt(cfg.T))
    return complex(_prefactor(cfg.state.l, cfg.T) * total * scale)


def reconstruct_wavefunction_comb(thetaf: float, phif: float, cfg: RunConfig,
                                  delta_L: float = 0.0) -> complex:
    """Validation form of the reconstruction: a discrete momentum comb.

    Sums the window kernel over L = 2 nu sqrt(1/T) + delta_L across the
    configured L_c range instead of integrating continuously; any comb
    offset delta_L reproduces the wave function, which is what justifies
    the averaged (continuous) form used everywhere else.
    """
    width = 2.0 / math.sqrt(cfg.T)
    hw = cfg.lc_halfwidth()
    nu_max = int(math.floor((hw - delta_L) / width))
    nu_min = int(math.ceil((-hw - delta_L) / width))
    aset = _reconstruct_angular_set(cfg, thetaf, phif)
    coeff = aset.collapse()
    total = 0.0 + 0.0j
    for nu in range(nu_min, nu_max + 1):
        L = width * nu + delta_L
        gt, dLp = _window_gamma_tilde(cfg.T, L)
        kern = _alpha_kernel(gt, cfg.T, cfg.n_alpha)
        total += np.sum(kern * _eval_collapsed(coeff, gt)) * dLp
    return complex(_prefactor(cfg.state.l, cfg.T) * total)


# --- L_c distribution -------------------------------------------------------

def _p1_block(payload) -> np.ndarray:
    cfg, lc_nodes = payload
    aset = _p1_angular_set(cfg)
    coeff = aset.collapse()
    pref = _prefactor(cfg.state.l, cfg.T) / (2.0 / math.sqrt(cfg.T))
    out = np.empty(len(lc_nodes), dtype=complex)
    for i, L_c in enumerate(lc_nodes):
        gt, dLp = _window_gamma_tilde(cfg.T, L_c)
        kern = _alpha_kernel(gt, cfg.T, cfg.n_alpha)
        out[i] = pref * np.sum(kern * _eval_collapsed(coeff, gt)) * dLp
    return out


def p1_distribution(cfg: RunConfig, Lc_grid: np.ndarray | None = None,
                    threads: int | None = None) -> DistributionCurve:
    """Distribution of the scalar characteristic angular momentum."""
    lc = _lc_grid(cfg, half=False) if Lc_grid is None else np.asarray(Lc_grid, float)
    payloads = [(cfg, lc[b]) for b in _blocks(len(lc))]
    values = np.concatenate(_run_blocks(_p1_block, payloads, threads))
    return DistributionCurve(axis=lc, values=values, config=cfg, kind="p1")


# --- bivariate and tilt distributions ---------------------------------------

def bivariate_p(L_c: float, theta_Lc: float, cfg: RunConfig) -> complex:
    """Bivariate distribution over (L_c, theta_Lc) at a single point."""
    aset = _p2_angular_set(cfg, theta_Lc)
    gt, dLp = _window_gamma_tilde(cfg.T, L_c)
    kern = _alpha_kernel(gt, cfg.T, cfg.n_alpha)
    value = _prefactor(cfg.state.l, cfg.T) * np.sum(kern * aset.evaluate(gt)) * dLp
    if not np.isfinite(value):
        raise NonFiniteError("bivariate_p produced a non-finite value")
    return complex(value)


def _theta_quadrant_grid(cfg: RunConfig) -> np.ndarray:
    d = 0.5 * math.pi / cfg.n_phi0
    return (np.arange(cfg.n_phi0) + 0.5) * d


def _p2_block(payload) -> np.ndarray:
    cfg, theta_nodes, lc_nodes = payload
    coeffs = [_p2_angular_set(cfg, th).collapse() for th in theta_nodes]
    pref = _prefactor(cfg.state.l, cfg.T)
    partial = np.zeros(len(theta_nodes), dtype=complex)
    for L_c in lc_nodes:
        gt, dLp = _window_gamma_tilde(cfg.T, L_c)
        kern = _alpha_kernel(gt, cfg.T, cfg.n_alpha) * (dLp * cfg.dLc)
        for j, coeff in enumerate(coeffs):
            partial[j] += pref * np.sum(kern * _eval_collapsed(coeff, gt))
    return partial


def _p2_half(cfg: RunConfig, negative: bool, theta_nodes: np.ndarray,
             threads: int | None) -> np.ndarray:
    lc = _lc_grid(cfg, half=True, negative=negative)
    payloads = [(cfg, theta_nodes, lc[b]) for b in _blocks(len(lc))]
    partials = _run_blocks(_p2_block, payloads, threads)
    total = np.zeros(len(theta_nodes), dtype=complex)
    for p in partials:
        total += p
    return total


def p2_distribution(cfg: RunConfig, theta_grid: np.ndarray | None = None,
                    threads: int | None = None) -> DistributionCurve:
    """Tilt distribution over theta_Lc in (0, pi).

    The positive-L_c half fills the first quadrant and the negative-L_c half,
    reflected, the second; the quadrant grid carries n_phi0 points.
    """
    q1 = _theta_quadrant_grid(cfg) if theta_grid is None \
        else np.asarray(theta_grid, float)
    plus = _p2_half(cfg, negative=False, theta_nodes=q1, threads=threads)
    minus = _p2_half(cfg, negative=True, theta_nodes=q1, threads=threads)
    axis = np.concatenate([q1, math.pi - q1[::-1]])
    values = np.concatenate([plus, minus[::-1]])
    return DistributionCurve(axis=axis, values=values, config=cfg, kind="p2")


# --- sum rule and kappa scan -------------------------------------------------

def sum_rule(l: int, cfg: RunConfig, theta_grid: np.ndarray | None = None,
             threads: int | None = None) -> dict:
    """Sum the tilt distributions over m and compare against l + 1/2."""
    curves = {}
    for m in range(-l, l + 1):
        mcfg = replace(cfg, state=StateLabel(l, m))
        curves[m] = p2_distribution(mcfg, theta_grid=theta_grid, threads=threads)
    axis = curves[l].axis
    total = np.sum([c.values for c in curves.values()], axis=0)
    target = l + 0.5
    deviation = float(np.max(np.abs(total - target)) / target)
    return {
        "theta": axis,
        "total": total,
        "per_m": curves,
        "target": target,
        "max_rel_deviation": deviation,
    }


def kappa_scan(state: StateLabel, cfg: RunConfig, kappa_list,
               threads: int | None = None) -> KappaScanResult:
    """Tilt distributions across an L_c-range scan, plus their window mean."""
    kappas = tuple(float(k) for k in kappa_list)
    if not kappas:
        raise DomainError("kappa_list must be non-empty")
    curves = []
    for k in kappas:
        kcfg = replace(cfg, state=state, kappa=k)
        curves.append(p2_distribution(kcfg, threads=threads))
    mean_vals = np.mean([c.values for c in curves], axis=0)
    mean = DistributionCurve(axis=curves[0].axis, values=mean_vals,
                             config=replace(cfg, state=state), kind="p2-mean")
    return KappaScanResult(kappas=kappas, curves=tuple(curves), mean=mean)
