"""Readers for the solver's emitted JSON documents and CSV grids.

This package never recomputes physics: these files are its only data
source.  Consistency between files combined into one figure is policed
here through the embedded configuration hashes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


class PlotInputError(Exception):
    """Input files are individually valid but cannot be combined."""


def load_payload(path: str) -> dict:
    """One emitted JSON document, checked for the envelope fields."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(payload, dict) or "command" not in payload:
        raise ValueError(f"{path}: missing the command field")
    if "config_hash" not in payload:
        raise ValueError(f"{path}: missing the config_hash field")
    return payload


@dataclass(frozen=True, eq=False)
class GridFile:
    """Parsed CSV grid: two named axes and a values matrix."""

    path: str
    command: str
    config_hash: str
    meta: dict
    axis1_name: str
    axis2_name: str
    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray


def load_grid(path: str) -> GridFile:
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line.rstrip("\n") for line in handle]
    if not lines or not lines[0].startswith("# trion "):
        raise ValueError(f"{path}: not a trion grid file")
    command = lines[0][len("# trion "):].strip()
    meta: dict[str, str] = {}
    axis_names = {}
    body = []
    for line in lines[1:]:
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            if key in ("axis1", "axis2"):
                axis_names[key] = value
            else:
                meta[key] = value
        elif line:
            body.append(line)
    if "config_hash" not in meta:
        raise ValueError(f"{path}: header carries no config_hash")
    if "axis1" not in axis_names or "axis2" not in axis_names:
        raise ValueError(f"{path}: header does not name both axes")
    header = body[0].split(",")
    axis2 = np.array([float(v) for v in header[1:]])
    axis1 = np.array([float(line.split(",", 1)[0]) for line in body[1:]])
    values = np.array(
        [[float(v) for v in line.split(",")[1:]] for line in body[1:]]
    )
    if values.shape != (axis1.size, axis2.size):
        raise ValueError(f"{path}: matrix shape does not match its axes")
    return GridFile(
        path=path,
        command=command,
        config_hash=meta.pop("config_hash"),
        meta=meta,
        axis1_name=axis_names["axis1"],
        axis2_name=axis_names["axis2"],
        axis1=axis1,
        axis2=axis2,
        values=values,
    )


def require_same_hash(pairs: list[tuple[str, str]]) -> str:
    """All (label, hash) entries must agree; returns the common hash."""
    hashes = {digest for _, digest in pairs}
    if len(hashes) > 1:
        detail = ", ".join(f"{label}={digest}" for label, digest in pairs)
        raise PlotInputError(f"config hashes differ across inputs: {detail}")
    return pairs[0][1]


def require_compatible_spectra(payloads: list[dict]) -> None:
    """Spectra shown side by side may differ only in the interaction.

    Their hashes differ by construction (the interaction is part of the
    configuration), so compatibility is checked field by field on the
    embedded configurations instead.
    """
    if not payloads:
        raise PlotInputError("no spectrum documents among the inputs")
    for payload in payloads:
        if payload["command"] != "spectrum":
            raise PlotInputError(
                f"expected spectrum documents, got {payload['command']!r}"
            )
    reference = dict(payloads[0]["config"])
    reference.pop("interaction")
    for payload in payloads[1:]:
        other = dict(payload["config"])
        other.pop("interaction")
        for key in reference:
            if other.get(key) != reference[key]:
                raise PlotInputError(
                    "spectra are not comparable: "
                    f"{key} is {reference[key]!r} vs {other.get(key)!r}"
                )


def pair_state_inputs(
    payloads: list[dict], grids: list[GridFile], command: str
) -> list[tuple[dict, GridFile]]:
    """Match each grid CSV to its state JSON by hash and term."""
    pairs = []
    for grid in grids:
        if grid.command != command:
            raise PlotInputError(
                f"{grid.path}: grid was written by {grid.command!r}, "
                f"not {command!r}"
            )
        matches = [
            payload
            for payload in payloads
            if payload["command"] == command
            and payload["config_hash"] == grid.config_hash
            and payload["state"]["term"] == grid.meta.get("term")
        ]
        if not matches:
            candidates = [
                (p.get("state", {}).get("term"), p["config_hash"])
                for p in payloads
                if p["command"] == command
            ]
            raise PlotInputError(
                f"{grid.path}: no JSON document matches term "
                f"{grid.meta.get('term')!r} with hash {grid.config_hash} "
                f"(documents present: {candidates})"
            )
        pairs.append((matches[0], grid))
    if not pairs:
        raise PlotInputError(f"no {command} CSV grid among the inputs")
    return pairs
