"""Command line front end: solve, analyze, and export JSON or CSV.

Subcommands mirror the library surface: spectrum, weights, density1,
shape, classify, geometry, convergence.  Every JSON payload carries the
configuration, its hash, and the energy unit; grid data goes to CSV
files whose comment header names both axes and repeats the hash.  All
floating point output is canonicalized, so identical runs produce
byte-identical files.

Exit codes: 0 success, 2 bad usage or unreadable input, 3 requested
symmetry series does not exist, 4 a quadrature failed its self-check.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .config import RunConfig, canonical_json, config_hash, resolve_model
from .errors import NonexistentSeriesError, QuadratureError
from .observables import one_body_density, q_weights, rms_radius
from .shapes import geometry_curves, ist_apex_angle, ist_peak_ratio, shape_density
from .solver import convergence_scan, solve_series, spectrum
from .symmetry import classify_all

_UNITS = "hbar_omega"


def _parse_state(text: str) -> tuple[int, int]:
    matched = re.fullmatch(r"(\d+)([+-])", text)
    if not matched:
        raise argparse.ArgumentTypeError(
            f"state must be L with a parity sign, like 0+ or 3-, got {text!r}"
        )
    return int(matched.group(1)), 1 if matched.group(2) == "+" else -1


def _parse_nmax_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"cutoffs must be non-negative, got {text!r}")
    return values


def _canonical(value):
    """Round floats to the output precision and unwrap numpy scalars."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.9e}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {key: _canonical(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_canonical(item) for item in value]
    return value


def _emit_json(payload: dict, path: str) -> None:
    text = json.dumps(_canonical(payload), indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _write_grid(
    path: str,
    command: str,
    digest: str,
    meta: dict[str, str],
    axis1: tuple[str, np.ndarray],
    axis2: tuple[str, np.ndarray],
    values: np.ndarray,
) -> None:
    """CSV matrix: axis1 runs down the rows, axis2 across the columns."""
    name1, grid1 = axis1
    name2, grid2 = axis2
    lines = [f"# trion {command}", f"# config_hash={digest}"]
    lines.extend(f"# {key}={value}" for key, value in meta.items())
    lines.append(f"# axis1={name1}")
    lines.append(f"# axis2={name2}")
    lines.append(",".join([f"{name1}\\{name2}"] + [f"{v:.9e}" for v in grid2]))
    for i, v1 in enumerate(grid1):
        lines.append(",".join([f"{v1:.9e}"] + [f"{v:.9e}" for v in values[i]]))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        interaction=getattr(args, "table", None) or getattr(args, "interaction", "A"),
        statistics=getattr(args, "statistics", "bosons"),
        n_max=getattr(args, "nmax", 20),
        l_max=getattr(args, "lmax", 4),
        gamma=getattr(args, "gamma", None),
        ortho_threshold=getattr(args, "threshold", 1e-8),
        radial_nodes=getattr(args, "radial_nodes", 48),
        angular_nodes=getattr(args, "angular_nodes", 32),
    )


def _config_block(config: RunConfig) -> dict:
    return json.loads(canonical_json(config))


def _payload(command: str, config: RunConfig) -> dict:
    return {
        "command": command,
        "units": _UNITS,
        "config_hash": config_hash(config),
        "config": _config_block(config),
    }


def _state_block(state, r_rms: float) -> dict:
    return {
        "term": state.term,
        "L": state.L,
        "parity": state.parity,
        "statistics": state.statistics,
        "index": state.index,
        "energy": state.energy,
        "gamma": state.gamma,
        "r_rms": r_rms,
    }


def _solve_state(args: argparse.Namespace, config: RunConfig):
    L, parity = args.state
    solution = solve_series(
        resolve_model(config),
        config.statistics,
        L,
        parity,
        config.n_max,
        n_states=args.index,
        gamma=config.gamma,
        threshold=config.ortho_threshold,
    )
    if args.index > solution.rank:
        raise NonexistentSeriesError(
            f"series {args.state[0]}{'+' if parity > 0 else '-'} has only "
            f"{solution.rank} states at n_max={config.n_max}"
        )
    return solution.states[args.index - 1]


def _cmd_spectrum(args: argparse.Namespace) -> int:
    config = _config_from(args)
    table = spectrum(
        resolve_model(config),
        config.statistics,
        config.n_max,
        config.l_max,
        n_states=args.nstates,
        gamma=config.gamma,
        threshold=config.ortho_threshold,
    )
    rows = table.shifted_rows() if args.shift_ground else table.rows
    payload = _payload("spectrum", config)
    payload.update(
        {
            "ground_energy": table.ground_energy,
            "shifted": bool(args.shift_ground),
            "nonexistent": [list(pair) for pair in table.nonexistent],
            "rows": [
                {
                    "term": row.term,
                    "L": row.L,
                    "parity": row.parity,
                    "index": row.index,
                    "energy": row.energy,
                    "gamma": row.gamma,
                    "r_rms": row.r_rms,
                    "boundary_warning": row.boundary_warning,
                }
                for row in rows
            ],
        }
    )
    _emit_json(payload, args.json)
    return 0


def _cmd_weights(args: argparse.Namespace) -> int:
    config = _config_from(args)
    state = _solve_state(args, config)
    vector = q_weights(state, config.radial_nodes, config.angular_nodes)
    payload = _payload("weights", config)
    payload.update(
        {
            "state": _state_block(state, rms_radius(state)),
            "total": vector.total,
            "rows": [
                {"q": row.q, "weight": row.weight, "allowed": row.allowed}
                for row in vector.rows
            ],
        }
    )
    _emit_json(payload, args.json)
    return 0


def _cmd_density1(args: argparse.Namespace) -> int:
    config = _config_from(args)
    state = _solve_state(args, config)
    size = rms_radius(state)
    r3_max = args.r3_max if args.r3_max is not None else 3.5 * size
    density = one_body_density(
        state,
        r3=np.linspace(0.0, r3_max, args.r3_points),
        theta_points=args.theta_points,
    )
    payload = _payload("density1", config)
    payload.update(
        {
            "state": _state_block(state, size),
            "norm": density.norm,
            "peak_theta_deg": density.peak_theta_deg,
            "peak_r3": density.peak_r3,
            "r3_points": len(density.r3),
            "theta_points": len(density.theta_deg),
            "r3_max": float(density.r3[-1]),
        }
    )
    if args.csv:
        _write_grid(
            args.csv,
            "density1",
            payload["config_hash"],
            {"term": state.term, "index": str(state.index)},
            ("r3", density.r3),
            ("theta3_deg", density.theta_deg),
            density.values,
        )
        payload["csv"] = args.csv
    _emit_json(payload, args.json)
    return 0


def _cmd_shape(args: argparse.Namespace) -> int:
    config = _config_from(args)
    state = _solve_state(args, config)
    grid = shape_density(
        state,
        hyper_radius=args.hyper_radius,
        phi_points=args.phi_points,
        ratio_points=args.ratio_points,
        ratio_max=args.ratio_max,
    )
    ist_ratio = ist_peak_ratio(grid)
    payload = _payload("shape", config)
    payload.update(
        {
            "state": _state_block(state, rms_radius(state)),
            "hyper_radius": grid.hyper_radius,
            "rt_value": grid.rt_value,
            "max_value": grid.max_value,
            "argmax_phi_deg": grid.argmax_phi_deg,
            "argmax_ratio": grid.argmax_ratio,
            "ist_peak_ratio": ist_ratio,
            "ist_peak_apex_deg": float(ist_apex_angle(ist_ratio)),
            "contour_levels": list(grid.contour_levels),
        }
    )
    if args.csv:
        _write_grid(
            args.csv,
            "shape",
            payload["config_hash"],
            {"term": state.term, "index": str(state.index)},
            ("phi_deg", grid.phi_deg),
            ("ratio", grid.ratio),
            grid.values,
        )
        payload["csv"] = args.csv
    _emit_json(payload, args.json)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    config = _config_from(args)
    profiles = classify_all(
        config.statistics, config.l_max, config.n_max, config.ortho_threshold
    )
    payload = _payload("classify", config)
    payload["rows"] = [
        {
            "term": profile.term,
            "L": profile.L,
            "parity": profile.parity,
            "exists": profile.exists,
            "allowed_q": list(profile.allowed_q),
            "rt_accessible": profile.rt_accessible,
            "ist_accessible": profile.ist_accessible,
            "col_accessible": profile.col_accessible,
            "group": profile.group,
        }
        for profile in profiles
    ]
    _emit_json(payload, args.json)
    return 0


def _cmd_geometry(args: argparse.Namespace) -> int:
    config = _config_from(args)
    curves = geometry_curves(args.points, args.ratio_max)
    payload = _payload("geometry", config)
    payload.update(
        {
            "phi_deg": curves.phi_deg,
            "ist_lower": curves.ist_lower,
            "ist_upper": curves.ist_upper,
            "apex_ratio": curves.apex_ratio,
            "apex_deg": curves.apex_deg,
            "points": {name: list(pair) for name, pair in curves.points.items()},
        }
    )
    _emit_json(payload, args.json)
    return 0


def _cmd_convergence(args: argparse.Namespace) -> int:
    args.nmax = max(args.nmax_list)
    config = _config_from(args)
    L, parity = args.state
    rows = convergence_scan(
        resolve_model(config),
        config.statistics,
        L,
        parity,
        args.nmax_list,
        threshold=config.ortho_threshold,
    )
    payload = _payload("convergence", config)
    payload.update(
        {
            "term": f"{L}{'+' if parity > 0 else '-'}",
            "rows": [
                {"n_max": row.n_max, "gamma": row.gamma, "energy": row.energy}
                for row in rows
            ],
        }
    )
    _emit_json(payload, args.json)
    return 0


def _add_model_args(parser: argparse.ArgumentParser, nmax: bool = True) -> None:
    parser.add_argument("--interaction", default="A", help="built-in model: A, B, or C")
    parser.add_argument("--table", help="two-column file overriding --interaction")
    parser.add_argument(
        "--statistics", choices=("bosons", "fermions"), default="bosons"
    )
    if nmax:
        parser.add_argument("--nmax", type=int, default=20, help="total quanta cutoff")
    parser.add_argument("--gamma", type=float, help="pin the basis width (default: optimize)")
    parser.add_argument("--threshold", type=float, default=1e-8, help="projector rank cut")
    parser.add_argument("--radial-nodes", type=int, default=48, dest="radial_nodes")
    parser.add_argument("--angular-nodes", type=int, default=32, dest="angular_nodes")


def _add_state_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--state", type=_parse_state, required=True, help="series, e.g. 2+")
    parser.add_argument("--index", type=int, default=1, help="1-based state within the series")


def _add_json_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", default="-", help="JSON output path, - for stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trion",
        description="Eigenstates of three trapped identical particles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="lowest states of every series")
    _add_model_args(p)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--nstates", type=int, default=1)
    p.add_argument("--shift-ground", action="store_true", dest="shift_ground")
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("weights", help="body-frame component weights of one state")
    _add_model_args(p)
    _add_state_args(p)
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_weights)

    p = sub.add_parser("density1", help="one-body density on a polar grid")
    _add_model_args(p)
    _add_state_args(p)
    p.add_argument("--r3-max", type=float, dest="r3_max")
    p.add_argument("--r3-points", type=int, default=121, dest="r3_points")
    p.add_argument("--theta-points", type=int, default=181, dest="theta_points")
    p.add_argument("--csv", help="write the density grid to this CSV file")
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_density1)

    p = sub.add_parser("shape", help="shape density at fixed hyperradius")
    _add_model_args(p)
    _add_state_args(p)
    p.add_argument("--hyper-radius", type=float, dest="hyper_radius")
    p.add_argument("--phi-points", type=int, default=181, dest="phi_points")
    p.add_argument("--ratio-points", type=int, default=121, dest="ratio_points")
    p.add_argument("--ratio-max", type=float, default=2.2, dest="ratio_max")
    p.add_argument("--csv", help="write the shape grid to this CSV file")
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_shape)

    p = sub.add_parser("classify", help="symmetry rules for every series")
    _add_model_args(p)
    p.add_argument("--lmax", type=int, default=4)
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("geometry", help="shape-space landmark curves for plots")
    p.add_argument("--points", type=int, default=181)
    p.add_argument("--ratio-max", type=float, default=2.2, dest="ratio_max")
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_geometry)

    p = sub.add_parser("convergence", help="ground energy versus basis cutoff")
    _add_model_args(p, nmax=False)
    _add_state_args(p)
    p.add_argument(
        "--nmax",
        type=_parse_nmax_list,
        required=True,
        dest="nmax_list",
        help="comma-separated cutoffs, e.g. 12,16,20",
    )
    _add_json_arg(p)
    p.set_defaults(handler=_cmd_convergence)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except NonexistentSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
