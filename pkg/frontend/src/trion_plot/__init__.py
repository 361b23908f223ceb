"""Plotting companion for the trion solver CLI.

Consumes the solver's emitted JSON payloads and CSV grids — never the
solver itself — and renders level diagrams, rms-size trends, one-body
density panels, and shape-density contour maps with landmark overlays.
"""

from .figures import (
    EQUILATERAL,
    density_figure,
    levels_figure,
    rms_figure,
    shape_figure,
)
from .io import (
    GridFile,
    PlotInputError,
    load_grid,
    load_payload,
    pair_state_inputs,
    require_compatible_spectra,
    require_same_hash,
)

__all__ = [
    "EQUILATERAL",
    "GridFile",
    "PlotInputError",
    "density_figure",
    "levels_figure",
    "load_grid",
    "load_payload",
    "pair_state_inputs",
    "require_compatible_spectra",
    "require_same_hash",
    "rms_figure",
    "shape_figure",
]
