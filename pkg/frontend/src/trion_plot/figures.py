"""Figure builders.

Each builder takes parsed input documents and returns a matplotlib
Figure together with a metadata dictionary describing what was drawn
(panel identities, config hashes, contour levels, marker positions).
The metadata is what the command line writes next to the image, and
what the tests inspect instead of pixels.
"""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import (
    GridFile,
    PlotInputError,
    require_compatible_spectra,
    require_same_hash,
)

EQUILATERAL = (0.0, np.sqrt(3.0) / 2.0)


def _term_order(term: str) -> tuple[int, int]:
    return (0 if term.endswith("+") else 1, int(term[:-1]))


def levels_figure(payloads: list[dict]) -> tuple[plt.Figure, dict]:
    """Side-by-side level columns with every ground state at zero."""
    require_compatible_spectra(payloads)
    fig, ax = plt.subplots(figsize=(1.9 * len(payloads) + 1.5, 5.0))
    columns = []
    for i, payload in enumerate(payloads):
        shift = 0.0 if payload["shifted"] else payload["ground_energy"]
        drawn = []
        for row in payload["rows"]:
            energy = row["energy"] - shift
            ax.hlines(energy, i - 0.32, i + 0.18, lw=1.4)
            ax.annotate(
                row["term"],
                (i + 0.20, energy),
                fontsize=8,
                va="center",
            )
            drawn.append(energy)
        columns.append(
            {
                "interaction": payload["config"]["interaction"],
                "config_hash": payload["config_hash"],
                "ground_energy": payload["ground_energy"],
                "levels": len(drawn),
                "lowest_drawn": min(drawn),
            }
        )
    ax.set_xticks(range(len(payloads)))
    ax.set_xticklabels(
        [f"{c['interaction']} ({p['config']['statistics']})"
         for c, p in zip(columns, payloads)]
    )
    ax.set_ylabel("energy above ground state")
    ax.set_xlim(-0.6, len(payloads) - 0.3)
    fig.tight_layout()
    meta = {
        "kind": "levels",
        "columns": columns,
        "aligned_at_zero": all(
            abs(c["lowest_drawn"]) < 1e-9 for c in columns
        ),
    }
    return fig, meta


def rms_figure(payloads: list[dict]) -> tuple[plt.Figure, dict]:
    """Root-mean-square particle distances per series, one line per model."""
    require_compatible_spectra(payloads)
    terms = sorted(
        {row["term"] for payload in payloads for row in payload["rows"]},
        key=_term_order,
    )
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    series = []
    for payload in payloads:
        sizes = {row["term"]: row["r_rms"] for row in payload["rows"]}
        y = [sizes.get(term, np.nan) for term in terms]
        ax.plot(range(len(terms)), y, marker="o",
                label=payload["config"]["interaction"])
        series.append(
            {
                "interaction": payload["config"]["interaction"],
                "config_hash": payload["config_hash"],
                "r_rms": {term: sizes.get(term) for term in terms},
            }
        )
    ax.set_xticks(range(len(terms)))
    ax.set_xticklabels(terms)
    ax.set_ylabel("r_rms (trap lengths)")
    ax.legend(title="interaction")
    fig.tight_layout()
    meta = {"kind": "rms", "terms": terms, "series": series}
    return fig, meta


def density_figure(
    pairs: list[tuple[dict, GridFile]]
) -> tuple[plt.Figure, dict]:
    """One half-plane panel of rho_1 per (JSON, CSV) pair."""
    fig, axes = plt.subplots(
        1, len(pairs), figsize=(4.0 * len(pairs), 4.2), squeeze=False
    )
    panels = []
    for ax, (payload, grid) in zip(axes[0], pairs):
        require_same_hash(
            [(payload["command"] + ".json", payload["config_hash"]),
             (grid.path, grid.config_hash)]
        )
        r3 = grid.axis1
        theta = np.radians(grid.axis2)
        x = r3[:, None] * np.sin(theta)[None, :]
        z = r3[:, None] * np.cos(theta)[None, :]
        ax.pcolormesh(x, z, grid.values, shading="gouraud")
        ax.set_aspect("equal")
        ax.set_xlabel("r sin(theta)")
        ax.set_ylabel("r cos(theta)")
        ax.set_title(payload["state"]["term"])
        panels.append(
            {
                "term": payload["state"]["term"],
                "config_hash": payload["config_hash"],
                "peak_theta_deg": payload["peak_theta_deg"],
                "norm": payload["norm"],
                "grid_shape": list(grid.values.shape),
            }
        )
    fig.tight_layout()
    meta = {"kind": "density1", "panels": panels}
    return fig, meta


def _arithmetic_levels(payload: dict, grid: GridFile) -> list[float]:
    levels = payload.get("contour_levels")
    if levels:
        steps = np.diff(levels)
        if len(levels) == 10 and np.allclose(steps, steps[0], rtol=1e-6):
            return [float(v) for v in levels]
    top = float(np.max(grid.values))
    return [float(v) for v in np.linspace(0.0, top, 12)[1:-1]]


def shape_figure(
    pairs: list[tuple[dict, GridFile]],
    geometry: dict | None = None,
    show_curves: bool = True,
    show_rt: bool = True,
) -> tuple[plt.Figure, dict]:
    """Shape-density contours with landmark overlays.

    Contour levels form an arithmetic series descending from the grid
    maximum toward zero.  The argmax is marked with a cross and its
    value in parentheses; the equilateral point gets its own marker.
    """
    fig, axes = plt.subplots(
        1, len(pairs), figsize=(4.6 * len(pairs), 4.6), squeeze=False
    )
    panels = []
    for ax, (payload, grid) in zip(axes[0], pairs):
        require_same_hash(
            [(payload["command"] + ".json", payload["config_hash"]),
             (grid.path, grid.config_hash)]
        )
        levels = _arithmetic_levels(payload, grid)
        ax.contour(
            grid.axis1, grid.axis2, grid.values.T, levels=levels,
            linewidths=0.9,
        )
        if show_curves and geometry is not None:
            phi = geometry["phi_deg"]
            ax.plot(phi, geometry["ist_lower"], lw=0.8, color="0.4")
            ax.plot(phi, geometry["ist_upper"], lw=0.8, color="0.4")
            for name, (px, py) in geometry["points"].items():
                if name != "RT":
                    ax.annotate(name, (px, py), fontsize=7, ha="center")
        if show_rt:
            ax.plot(*EQUILATERAL, marker="x", ms=9, color="k", mew=1.6)
        argmax = (payload["argmax_phi_deg"], payload["argmax_ratio"])
        ax.plot(*argmax, marker="+", ms=11, color="crimson", mew=1.6)
        ax.annotate(
            f"({payload['max_value']:.3g})",
            argmax,
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=8,
            color="crimson",
        )
        ax.set_xlabel("phi (deg)")
        ax.set_ylabel("R / r")
        ax.set_title(payload["state"]["term"])
        ax.set_ylim(grid.axis2[0], grid.axis2[-1])
        panels.append(
            {
                "term": payload["state"]["term"],
                "config_hash": payload["config_hash"],
                "contour_levels": levels,
                "rt_marker": list(EQUILATERAL) if show_rt else None,
                "argmax": [payload["argmax_phi_deg"],
                           payload["argmax_ratio"]],
                "max_value": payload["max_value"],
                "hyper_radius": payload["hyper_radius"],
            }
        )
    fig.tight_layout()
    meta = {
        "kind": "shape",
        "panels": panels,
        "overlays": {"curves": bool(show_curves and geometry), "rt": show_rt},
    }
    return fig, meta
