"""Command line front end: render figures from solver output files.

Inputs are the JSON payloads and CSV grids that the solver CLI emits.
Every render writes the image plus a ``<out>.meta.json`` sidecar that
records what was drawn, so results can be checked without comparing
pixels.  Mixing files produced under different configurations is an
error (exit code 3).
"""

from __future__ import annotations

import argparse
import json
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .figures import density_figure, levels_figure, rms_figure, shape_figure
from .io import PlotInputError, load_grid, load_payload, pair_state_inputs

_PNG_METADATA = {"Software": "trion-plot"}


def _split_inputs(paths: list[str]) -> tuple[list[dict], list, dict | None]:
    """Load inputs, returning (payloads, grids, geometry payload)."""
    payloads, grids, geometry = [], [], None
    for path in paths:
        if path.endswith(".csv"):
            grids.append(load_grid(path))
            continue
        payload = load_payload(path)
        if payload["command"] == "geometry":
            geometry = payload
        else:
            payloads.append(payload)
    return payloads, grids, geometry


def _save(fig, meta: dict, out: str, dpi: int) -> None:
    fig.savefig(out, dpi=dpi, metadata=_PNG_METADATA)
    plt.close(fig)
    with open(out + ".meta.json", "w", encoding="utf-8") as handle:
        json.dump(meta, handle, indent=2, sort_keys=True)
        handle.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trion-plot",
        description="Render figures from trion output files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", dest="inputs", nargs="+", required=True,
                       metavar="FILE", help="solver JSON/CSV output files")
        p.add_argument("--out", required=True, help="image file to write")
        p.add_argument("--dpi", type=int, default=150)

    p = sub.add_parser("levels", help="aligned level diagrams, one column "
                                      "per spectrum payload")
    common(p)

    p = sub.add_parser("rms", help="rms interparticle distance per series")
    common(p)

    p = sub.add_parser("density1", help="one-body density half-plane panels "
                                        "(JSON + CSV pairs)")
    common(p)

    p = sub.add_parser("shape", help="shape-density contours with landmark "
                                     "overlays (JSON + CSV pairs)")
    common(p)
    p.add_argument("--no-curves", action="store_true",
                   help="omit the isosceles branch curves")
    p.add_argument("--no-rt", action="store_true",
                   help="omit the equilateral-point marker")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payloads, grids, geometry = _split_inputs(args.inputs)
        if args.command == "levels":
            fig, meta = levels_figure(payloads)
        elif args.command == "rms":
            fig, meta = rms_figure(payloads)
        elif args.command == "density1":
            pairs = pair_state_inputs(payloads, grids, "density1")
            fig, meta = density_figure(pairs)
        else:
            pairs = pair_state_inputs(payloads, grids, "shape")
            fig, meta = shape_figure(
                pairs,
                geometry=geometry,
                show_curves=not args.no_curves,
                show_rt=not args.no_rt,
            )
        _save(fig, meta, args.out, args.dpi)
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
