"""Renderers for each figure kind.

Conventions mirrored from the source figures: distribution curves draw the
real part solid and the imaginary part dotted; polar tilt plots measure the
angle from the vertical axis, repeat every curve by reflection about that
axis, carry tick marks at radial increments of 0.5, and plot negative values
mirrored into the opposite half-plane (a negative radius at tilt angle t is
drawn at t - pi).  3-D curve plots sit on a light wireframe sphere.
"""

from __future__ import annotations

import math

import numpy as np

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .jobs import FigureJob, check_inputs, read_csv_columns

TICK_STEP = 0.5


def polar_xy(theta, value):
    """Map (tilt angle, signed value) to plot coordinates.

    The angle is measured from the vertical axis; negative values are drawn
    with positive radius in the mirrored half-plane (angle - pi), which is
    the documented convention for distribution lobes that dip negative.
    """
    theta = np.asarray(theta, dtype=float)
    value = np.asarray(value, dtype=float)
    angle = np.where(value >= 0.0, theta, theta - math.pi)
    r = np.abs(value)
    return r * np.sin(angle), r * np.cos(angle)


def _polar_axes(ax, rmax):
    ax.set_aspect("equal")
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.axvline(0.0, color="0.8", lw=0.8, zorder=0)
    ticks = np.arange(TICK_STEP, rmax + TICK_STEP, TICK_STEP)
    for t in ticks:
        for dx, dy in ((t, 0), (-t, 0), (0, t), (0, -t)):
            ax.plot([dx], [dy], marker="+", color="0.4", ms=6, zorder=1)
    lim = (ticks[-1] if len(ticks) else rmax) * 1.15
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_xticks([])
    ax.set_yticks([])


def _draw_polar_curve(ax, theta, value, color="C0", label=None):
    x, y = polar_xy(theta, value)
    ax.plot(x, y, color=color, lw=1.2, label=label)
    ax.plot(-x, y, color=color, lw=1.2)   # reflection about the vertical axis


def _sphere_wireframe(ax):
    u = np.linspace(0, 2 * math.pi, 25)
    v = np.linspace(0, math.pi, 13)
    x = np.outer(np.cos(u), np.sin(v))
    y = np.outer(np.sin(u), np.sin(v))
    z = np.outer(np.ones_like(u), np.cos(v))
    ax.plot_wireframe(x, y, z, color="0.85", lw=0.3)
    ax.set_box_aspect((1, 1, 1))
    ax.set_axis_off()


def render_p1_panel(job, fig):
    ax = fig.add_subplot(111)
    for inp in job.inputs:
        cols = read_csv_columns(inp)
        ax.plot(cols["axis_value"], cols["re"], "-", lw=1.0, label="Re")
        ax.plot(cols["axis_value"], cols["im"], ":", lw=1.0, label="Im")
    ax.axhline(0, color="0.8", lw=0.6)
    ax.set_xlabel("characteristic angular momentum")
    ax.set_ylabel("distribution")
    ax.legend(loc="best", fontsize=8)


def render_p2_polar(job, fig):
    ax = fig.add_subplot(111)
    rmax = TICK_STEP
    for i, inp in enumerate(job.inputs):
        cols = read_csv_columns(inp)
        _draw_polar_curve(ax, cols["axis_value"], cols["re"], color=f"C{i}")
        rmax = max(rmax, float(np.max(np.abs(cols["re"]))))
    _polar_axes(ax, rmax)


def render_kappa_panel(job, fig):
    n = len(job.inputs)
    ncol = min(n, 4)
    nrow = (n + ncol - 1) // ncol
    for i, inp in enumerate(job.inputs):
        ax = fig.add_subplot(nrow, ncol, i + 1)
        cols = read_csv_columns(inp)
        _draw_polar_curve(ax, cols["axis_value"], cols["re"])
        _polar_axes(ax, float(np.max(np.abs(cols["re"]))))
        ax.set_title(inp.split("/")[-1].replace(".csv", ""), fontsize=7)


def render_phase_comparison(job, fig):
    cols = read_csv_columns(job.inputs[0])
    ax1 = fig.add_subplot(311)
    ax1.plot(cols["abs_gamma_n"], cols["mag_exact"], lw=0.9, label="exact")
    ax1.plot(cols["abs_gamma_n"], cols["mag_semiclassical"], lw=0.9,
             label="semiclassical")
    ax1.set_ylabel("magnitude")
    ax1.legend(fontsize=7)
    ax2 = fig.add_subplot(312, sharex=ax1)
    ax2.plot(cols["abs_gamma_n"], cols["phase_exact"], lw=0.9)
    ax2.plot(cols["abs_gamma_n"], cols["phase_semiclassical"], lw=0.9)
    ax2.set_ylabel("phase (rad)")
    ax3 = fig.add_subplot(313, sharex=ax1)
    ax3.plot(cols["abs_gamma_n"], cols["phase_difference_stripped"], lw=0.9)
    ax3.set_ylabel("stripped difference")
    ax3.set_xlabel("|gamma + 2 pi n|")


def render_winding(job, fig):
    # diagram of the closed-form winding decomposition; no data inputs
    gt = np.linspace(-5 * math.pi, 5 * math.pi, 2001)
    gamma = np.abs(((gt - math.pi) % (2 * math.pi)) - math.pi)
    f2 = np.floor(gt / (2 * math.pi))
    n = f2 - (1 + 2 * f2) * (np.floor(gt / math.pi) % 2)
    ax1 = fig.add_subplot(211)
    ax1.plot(gt / math.pi, gamma / math.pi, lw=1.0)
    ax1.set_ylabel("separation / pi")
    ax2 = fig.add_subplot(212, sharex=ax1)
    ax2.step(gt / math.pi, n, where="post", lw=1.0)
    ax2.set_ylabel("winding number")
    ax2.set_xlabel("total angle / pi")


def _render_curve_3d(job, fig, marker_column=None):
    ax = fig.add_subplot(111, projection="3d")
    _sphere_wireframe(ax)
    for inp in job.inputs:
        cols = read_csv_columns(inp)
        ax.plot(cols["x"], cols["y"], cols["z"], lw=1.2, color="C3")
        if marker_column and marker_column in cols:
            seg = np.asarray(cols[marker_column])
            joints = np.nonzero(np.diff(seg))[0]
            ax.scatter(np.asarray(cols["x"])[joints],
                       np.asarray(cols["y"])[joints],
                       np.asarray(cols["z"])[joints], color="k", s=12)
        ax.scatter([cols["x"][0], cols["x"][-1]],
                   [cols["y"][0], cols["y"][-1]],
                   [cols["z"][0], cols["z"][-1]], color="C0", s=16)


def render_elastica_3d(job, fig):
    _render_curve_3d(job, fig, marker_column="segment_index")


def render_pt_path_3d(job, fig):
    _render_curve_3d(job, fig)


def render_vector_cloud(job, fig):
    # vectors with random directions; intensity looked up from the tilt
    # distribution at the vector's polar angle (nearest sample)
    cols = read_csv_columns(job.inputs[0])
    theta = np.asarray(cols["axis_value"])
    val = np.asarray(cols["re"])
    rng = np.random.default_rng(int(job.extra.get("seed", 0)))
    count = int(job.extra.get("count", 400))
    z = rng.uniform(-1, 1, count)
    phi = rng.uniform(0, 2 * math.pi, count)
    polar = np.arccos(z)
    weights = np.abs(val[np.argmin(np.abs(polar[:, None] - theta[None, :]), axis=1)])
    weights = weights / (np.max(weights) + 1e-300)
    st = np.sin(polar)
    vx, vy, vz = st * np.cos(phi), st * np.sin(phi), z
    ax = fig.add_subplot(111, projection="3d")
    _sphere_wireframe(ax)
    for i in range(count):
        ax.plot([0, vx[i]], [0, vy[i]], [0, vz[i]], color="C0",
                alpha=float(0.02 + 0.85 * weights[i]), lw=0.7)


_RENDERERS = {
    "p1-panel": render_p1_panel,
    "p2-polar": render_p2_polar,
    "kappa-panel": render_kappa_panel,
    "phase-comparison": render_phase_comparison,
    "winding": render_winding,
    "elastica-3d": render_elastica_3d,
    "pt-path-3d": render_pt_path_3d,
    "vector-cloud": render_vector_cloud,
}


def render(job: FigureJob) -> str:
    """Validate the job, render it, and write the image; returns the path."""
    check_inputs(job)
    fig = plt.figure(figsize=(6, 6), dpi=120)
    try:
        _RENDERERS[job.figure_kind](job, fig)
        fig.savefig(job.output, bbox_inches="tight")
    finally:
        plt.close(fig)
    return job.output
