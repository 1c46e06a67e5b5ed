"""Figure jobs and the CSV/manifest contract they consume.

A job names a figure kind, the input CSV files, and the output image.  Every
input directory must hold the producing run's ``manifest.json``; a job
refuses inputs whose manifest command does not match the kinds listed in
``ACCEPTED_COMMANDS``.  Rendering never recomputes data: the only transforms
applied are axis scaling, the polar reflection about the vertical axis, and
the negative-value mirroring rule.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path


class JobError(Exception):
    """Invalid job: bad kind, missing data, or a manifest mismatch."""


FIGURE_KINDS = (
    "phase-comparison",
    "winding",
    "p1-panel",
    "p2-polar",
    "kappa-panel",
    "elastica-3d",
    "pt-path-3d",
    "vector-cloud",
)

#: manifest commands each figure kind will accept as its data source
ACCEPTED_COMMANDS = {
    "phase-comparison": {"propagator"},
    "winding": set(),                       # diagram only, takes no CSVs
    "p1-panel": {"p1"},
    "p2-polar": {"p2", "kappa-scan", "sum-rule"},
    "kappa-panel": {"kappa-scan"},
    "elastica-3d": {"elastica"},
    "pt-path-3d": {"pt-path"},
    "vector-cloud": {"p2", "kappa-scan"},
}


@dataclass(frozen=True)
class FigureJob:
    figure_kind: str
    inputs: tuple[str, ...]
    output: str
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.figure_kind not in FIGURE_KINDS:
            raise JobError(f"unknown figure kind '{self.figure_kind}'")
        if self.figure_kind != "winding" and not self.inputs:
            raise JobError(f"figure kind '{self.figure_kind}' needs input CSVs")


def read_manifest(csv_path: str) -> dict:
    path = Path(csv_path).parent / "manifest.json"
    if not path.exists():
        raise JobError(f"no manifest.json beside {csv_path}")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def check_inputs(job: FigureJob) -> list[dict]:
    """Validate each input's manifest command; return the manifests."""
    manifests = []
    for inp in job.inputs:
        manifest = read_manifest(inp)
        allowed = ACCEPTED_COMMANDS[job.figure_kind]
        if manifest.get("command") not in allowed:
            raise JobError(
                f"{inp}: produced by '{manifest.get('command')}', "
                f"but '{job.figure_kind}' accepts {sorted(allowed)}")
        manifests.append(manifest)
    return manifests


def read_csv_columns(path: str) -> dict[str, list[float]]:
    """Read a dataset CSV into named float columns; refuse empty files."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise JobError(f"{path}: empty CSV")
        cols: dict[str, list[float]] = {name: [] for name in reader.fieldnames}
        for row in reader:
            for name in reader.fieldnames:
                cols[name].append(float(row[name]))
    if not next(iter(cols.values()), []):
        raise JobError(f"{path}: no data rows")
    return cols
