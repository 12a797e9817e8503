"""Render figures from persisted experiment CSVs.

This package never recomputes spectra: every figure is built from a CSV
plus its metadata sidecar, exactly as written by the `baker` CLI.
"""

from .render import FIGURE_KINDS, FigureJob, render

__version__ = "0.1.0"
__all__ = ["FigureJob", "render", "FIGURE_KINDS", "__version__"]
