"""Batch figure rendering from s2paths CSV datasets."""

from __future__ import annotations

import argparse
import sys

from .jobs import FIGURE_KINDS, FigureJob, JobError
from .render import render


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="s2figures",
                                 description="Render s2paths CSV outputs "
                                 "into figure images")
    ap.add_argument("kind", choices=FIGURE_KINDS)
    ap.add_argument("--input", action="append", default=[],
                    help="input CSV (repeatable)")
    ap.add_argument("--output", required=True, help="image path (.png/.svg)")
    ap.add_argument("--count", type=int, default=400,
                    help="vector count for vector-cloud")
    ap.add_argument("--seed", type=int, default=0,
                    help="sampling seed for vector-cloud")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        job = FigureJob(figure_kind=args.kind, inputs=tuple(args.input),
                        output=args.output,
                        extra={"count": args.count, "seed": args.seed})
        render(job)
    except (JobError, OSError, ValueError) as exc:
        print(f"s2figures: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
