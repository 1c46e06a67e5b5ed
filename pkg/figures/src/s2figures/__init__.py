"""Figure rendering for s2paths CSV datasets."""

__version__ = "0.1.0"

from .jobs import FigureJob, JobError, FIGURE_KINDS
from .render import render, polar_xy
