"""Command-line front end: experiment orchestration and dataset emission.

Each run writes one or more CSV files plus a JSON manifest (command, fully
resolved configuration, library version, wall time) beside them.  Numeric
CSV fields carry 17 significant digits so doubles round-trip exactly;
complex values are split into re/im columns.  Exit codes: 0 success, 2
configuration or usage error, 3 numerical failure.

Worker partitioning (--threads) never changes results: work is split into
fixed blocks combined in index order, so CSVs are byte-identical for any
worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import leading_magnitude, semiclassical_projection
from .distributions import (RunConfig, StateLabel, bivariate_p, kappa_scan,
                            p1_distribution, p2_distribution,
                            reconstruct_wavefunction, sum_rule)
from .elastica import ElasticaSpec, geometry_from, sample_curve
from .errors import S2PathsError, DomainError, ConsistencyError
from .propagators import (exact_propagator, phase_comparison_dataset,
                          semiclassical_propagator, sphere_spectral)
from .ptpaths import PTPathSpec, pt_path

_CONFIG_KEYS = ("l", "m", "T", "kappa", "n_alpha", "n_thetaf", "n_phif",
                "n_phi0", "dLc", "epsilon")

_COLUMN_DOCS = {
    "p1": [("axis_value", "characteristic angular momentum L_c (hbar = I = 1)"),
           ("re", "real part of the L_c distribution"),
           ("im", "imaginary part of the L_c distribution")],
    "p2": [("axis_value", "tilt angle theta_Lc of the L_c vector, radians in (0, pi)"),
           ("re", "real part of the tilt distribution"),
           ("im", "imaginary part of the tilt distribution")],
    "bivariate": [("axis_value", "tilt angle theta_Lc, radians"),
                  ("re", "real part of the bivariate distribution at (L_c, theta_Lc)"),
                  ("im", "imaginary part of the bivariate distribution")],
    "sum-rule": [("axis_value", "tilt angle theta_Lc, radians"),
                 ("re", "real part of the distribution summed over m"),
                 ("im", "imaginary part of the summed distribution")],
    "kappa-scan": [("axis_value", "tilt angle theta_Lc, radians"),
                   ("re", "real part of the tilt distribution at this kappa"),
                   ("im", "imaginary part of the tilt distribution")],
    "elastica": [("x", "Cartesian x of a curve sample on the unit sphere"),
                 ("y", "Cartesian y of a curve sample"),
                 ("z", "Cartesian z of a curve sample"),
                 ("segment_index", "index of the circular segment the sample lies on")],
    "pt-path": [("t", "time along the path (hbar = I = 1)"),
                ("theta", "polar angle, radians"),
                ("phi", "azimuthal angle, radians (unwrapped)"),
                ("x", "Cartesian x on the unit sphere"),
                ("y", "Cartesian y"),
                ("z", "Cartesian z")],
    "analytic-check": [("l", "orbital quantum number"),
                       ("leading", "leading projection coefficient"),
                       ("closed_form", "closed-form leading magnitude"),
                       ("rel_deviation", "relative difference of the two")],
    "reconstruct": [("axis_value", "final polar angle theta_f, radians"),
                    ("re", "real part of the reconstructed wave function"),
                    ("im", "imaginary part of the reconstructed wave function")],
    "propagator": [("axis_value", "angular separation gamma, radians"),
                   ("re", "real part of the propagator"),
                   ("im", "imaginary part of the propagator")],
    "propagator --terms": [
        ("abs_gamma_n", "per-winding |gamma + 2 pi n|"),
        ("mag_exact", "magnitude of the exact-propagator term"),
        ("phase_exact", "phase of the exact term, radians"),
        ("mag_semiclassical", "magnitude of the semiclassical term"),
        ("phase_semiclassical", "phase of the semiclassical term, radians"),
        ("phase_difference_stripped",
         "exact-minus-semiclassical term phase with the discontinuous jumps "
         "of both stripped, unwrapped along the axis")],
}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(float(v)) if not isinstance(v, str) else v
                              for v in row) + "\n")


def _write_curve_csv(path: Path, axis, values) -> None:
    _write_csv(path, ["axis_value", "re", "im"],
               ((a, v.real, v.imag) for a, v in zip(axis, values)))


def _write_manifest(outdir: Path, command: str, config: dict, outputs: list[str],
                    wall: float, extra: dict | None = None) -> None:
    doc = {
        "command": command,
        "config": config,
        "version": __version__,
        "wall_time_s": wall,
        "outputs": outputs,
    }
    if extra:
        doc.update(extra)
    with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_config_file(path: str) -> dict:
    """Parse a line-oriented ``key = value`` configuration file."""
    values: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = (s.strip() for s in line.partition("="))
            if key not in _CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown key '{key}'")
            values[key] = val
    return values


def config_io(path: str | None, overrides: dict) -> RunConfig:
    """Resolve a RunConfig from an optional file plus flag overrides."""
    raw = load_config_file(path) if path else {}
    raw.update({k: v for k, v in overrides.items() if v is not None})
    l = int(raw.get("l", 0))
    m = int(raw.get("m", 0))
    kappa = raw.get("kappa")
    return RunConfig(
        state=StateLabel(l, m),
        T=float(raw.get("T", 32.0 * math.pi)),
        kappa=None if kappa is None else float(kappa),
        n_alpha=int(raw.get("n_alpha", 64)),
        n_thetaf=int(raw.get("n_thetaf", 32)),
        n_phif=int(raw.get("n_phif", 1)),
        n_phi0=int(raw.get("n_phi0", 64)),
        dLc=float(raw.get("dLc", 0.001)),
        epsilon=float(raw.get("epsilon", 0.0)),
    )


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--l", type=int, dest="l")
    p.add_argument("--m", type=int, dest="m")
    p.add_argument("--T", type=float, dest="T")
    p.add_argument("--kappa", type=float)
    p.add_argument("--n-alpha", type=int, dest="n_alpha")
    p.add_argument("--n-thetaf", type=int, dest="n_thetaf")
    p.add_argument("--n-phif", type=int, dest="n_phif")
    p.add_argument("--n-phi0", type=int, dest="n_phi0")
    p.add_argument("--dlc", type=float, dest="dLc")
    p.add_argument("--epsilon", type=float)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output directory (default: cwd; "
                   "S2PATHS_OUTDIR overrides)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: machine parallelism)")
    p.add_argument("--describe", action="store_true",
                   help="print the CSV column documentation and exit")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="s2paths",
                                 description="Sphere propagators and "
                                 "angular-momentum path distributions")
    sub = ap.add_subparsers(dest="command", required=True)

    for name in ("p1", "p2"):
        p = sub.add_parser(name, help=f"emit the {name} distribution curve")
        _add_common(p)
        _add_config_flags(p)

    p = sub.add_parser("bivariate", help="bivariate distribution at one point")
    _add_common(p)
    _add_config_flags(p)
    p.add_argument("--lc", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)

    p = sub.add_parser("sum-rule", help="m-summed tilt distribution for one l")
    _add_common(p)
    _add_config_flags(p)

    p = sub.add_parser("kappa-scan", help="tilt distributions across kappa values")
    _add_common(p)
    _add_config_flags(p)
    p.add_argument("--kappas", default="2,3,4,5",
                   help="comma-separated kappa values")

    p = sub.add_parser("elastica", help="sample one elastica curve")
    _add_common(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--points-per-segment", type=int, default=200)

    p = sub.add_parser("pt-path", help="sample an azimuthally decomposed path")
    _add_common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--periods", type=int, default=7)
    p.add_argument("--samples-per-period", type=int, default=400)

    p = sub.add_parser("analytic-check", help="stationary-phase projection table")
    _add_common(p)
    p.add_argument("--l-max", type=int, default=8)

    p = sub.add_parser("reconstruct", help="rebuild the wave function on a theta_f grid")
    _add_common(p)
    _add_config_flags(p)
    p.add_argument("--points", type=int, default=4)
    p.add_argument("--phi-f", type=float, default=0.0)

    p = sub.add_parser("propagator", help="propagator curve or per-term table")
    _add_common(p)
    p.add_argument("--kind", choices=("exact", "semiclassical", "spectral"),
                   default="exact")
    p.add_argument("--T", type=float, default=3.0)
    p.add_argument("--gamma-min", type=float, default=0.01)
    p.add_argument("--gamma-max", type=float, default=math.pi)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--n-alpha", type=int, default=64)
    p.add_argument("--l-max", type=int, default=120)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--terms", action="store_true",
                   help="emit the per-winding magnitude/phase table instead")
    p.add_argument("--n-range", type=int, default=3)
    return ap


def _describe(args) -> int:
    key = args.command
    if key == "propagator" and getattr(args, "terms", False):
        key = "propagator --terms"
    for name, doc in _COLUMN_DOCS[key]:
        print(f"{name}: {doc}")
    return 0


def _outdir(args) -> Path:
    out = os.environ.get("S2PATHS_OUTDIR") or args.out or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _cfg_overrides(args) -> dict:
    return {k: getattr(args, k, None) for k in _CONFIG_KEYS}


def _run(args) -> int:
    outdir = _outdir(args)
    t0 = time.perf_counter()
    outputs: list[str] = []
    extra: dict = {}
    cmd = args.command

    if cmd in ("p1", "p2", "bivariate", "sum-rule", "kappa-scan", "reconstruct"):
        cfg = config_io(args.config, _cfg_overrides(args))
        config_doc = cfg.to_dict()
    else:
        cfg = None
        config_doc = {}

    if cmd == "p1":
        curve = p1_distribution(cfg, threads=args.threads)
        _write_curve_csv(outdir / "p1.csv", curve.axis, curve.values)
        outputs.append("p1.csv")
    elif cmd == "p2":
        curve = p2_distribution(cfg, threads=args.threads)
        _write_curve_csv(outdir / "p2.csv", curve.axis, curve.values)
        outputs.append("p2.csv")
    elif cmd == "bivariate":
        val = bivariate_p(args.lc, args.theta, cfg)
        _write_curve_csv(outdir / "bivariate.csv", [args.theta], [val])
        outputs.append("bivariate.csv")
        extra["L_c"] = args.lc
    elif cmd == "sum-rule":
        result = sum_rule(cfg.state.l, cfg, threads=args.threads)
        _write_curve_csv(outdir / "sum_rule.csv", result["theta"], result["total"])
        outputs.append("sum_rule.csv")
        extra["target"] = result["target"]
        extra["max_rel_deviation"] = result["max_rel_deviation"]
    elif cmd == "kappa-scan":
        kappas = [float(s) for s in args.kappas.split(",") if s]
        result = kappa_scan(cfg.state, cfg, kappas, threads=args.threads)
        for k, curve in zip(result.kappas, result.curves):
            name = f"kappa_scan_k{k:g}.csv"
            _write_curve_csv(outdir / name, curve.axis, curve.values)
            outputs.append(name)
        _write_curve_csv(outdir / "kappa_scan_mean.csv",
                         result.mean.axis, result.mean.values)
        outputs.append("kappa_scan_mean.csv")
        extra["kappas"] = list(result.kappas)
    elif cmd == "elastica":
        spec = ElasticaSpec(gamma=args.gamma, n=args.n, beta=args.beta)
        geo = geometry_from(spec)
        curve = sample_curve(spec, args.points_per_segment)
        seg = np.searchsorted(np.asarray(curve.torsion_indices, dtype=int),
                              np.arange(len(curve.points)), side="right") \
            if curve.torsion_indices else np.zeros(len(curve.points), dtype=int)
        _write_csv(outdir / "elastica.csv", ["x", "y", "z", "segment_index"],
                   ((p[0], p[1], p[2], str(int(s)))
                    for p, s in zip(curve.points, seg)))
        outputs.append("elastica.csv")
        config_doc = {"gamma": args.gamma, "n": args.n, "beta": args.beta,
                      "points_per_segment": args.points_per_segment}
        extra["total_length"] = geo.total_length
        extra["n_pair"] = geo.n_pair
    elif cmd == "pt-path":
        spec = PTPathSpec(l=args.l, m=args.m, periods=args.periods,
                          samples_per_period=args.samples_per_period)
        path = pt_path(spec)
        _write_csv(outdir / "pt_path.csv", ["t", "theta", "phi", "x", "y", "z"],
                   ((t, th, ph, p[0], p[1], p[2]) for t, th, ph, p in
                    zip(path.t, path.theta, path.phi, path.points)))
        outputs.append("pt_path.csv")
        config_doc = {"l": args.l, "m": args.m, "periods": args.periods,
                      "samples_per_period": args.samples_per_period}
    elif cmd == "analytic-check":
        rows = []
        for l in range(args.l_max + 1):
            lead = semiclassical_projection(l).leading
            mag = leading_magnitude(l)
            rows.append((float(l), float(lead.real), mag,
                         abs(abs(lead) - mag) / mag))
        _write_csv(outdir / "analytic_check.csv",
                   ["l", "leading", "closed_form", "rel_deviation"], rows)
        outputs.append("analytic_check.csv")
        config_doc = {"l_max": args.l_max}
    elif cmd == "reconstruct":
        thetas = (np.arange(args.points) + 0.5) * math.pi / args.points
        vals = [reconstruct_wavefunction(t, args.phi_f, cfg, threads=args.threads)
                for t in thetas]
        _write_curve_csv(outdir / "reconstruct.csv", thetas, vals)
        outputs.append("reconstruct.csv")
        extra["phi_f"] = args.phi_f
    elif cmd == "propagator":
        config_doc = {"kind": args.kind, "T": args.T, "epsilon": args.epsilon,
                      "n_alpha": args.n_alpha, "n_max": args.n_max,
                      "l_max": args.l_max}
        if args.terms:
            grid = np.linspace(args.gamma_min, args.gamma_max, args.points,
                               endpoint=False)
            table = phase_comparison_dataset(args.T, grid, args.n_range,
                                             n_alpha=args.n_alpha,
                                             epsilon=args.epsilon)
            cols = list(table)
            _write_csv(outdir / "phase_comparison.csv", cols,
                       zip(*(table[c] for c in cols)))
            outputs.append("phase_comparison.csv")
        else:
            grid = np.linspace(args.gamma_min, args.gamma_max, args.points)
            if args.kind == "exact":
                vals = [exact_propagator(g, args.T, args.n_max, args.epsilon,
                                         args.n_alpha) for g in grid]
            elif args.kind == "semiclassical":
                vals = [semiclassical_propagator(g, args.T, args.n_max,
                                                 args.epsilon) for g in grid]
            else:
                vals = [sphere_spectral(g, args.T, args.l_max, args.epsilon)
                        for g in grid]
            _write_curve_csv(outdir / "propagator.csv", grid, vals)
            outputs.append("propagator.csv")

    _write_manifest(outdir, cmd, config_doc, outputs,
                    time.perf_counter() - t0, extra)
    return 0


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "describe", False):
        return _describe(args)
    try:
        return _run(args)
    except (DomainError, ConsistencyError, ValueError) as exc:
        print(f"s2paths: configuration error: {exc}", file=sys.stderr)
        return 2
    except S2PathsError as exc:
        print(f"s2paths: numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
