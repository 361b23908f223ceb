"""Pairwise central interactions and their radial oscillator integrals.

Three built-in finite-range models cover the regimes the solver is aimed
at, and arbitrary radial shapes can be supplied as two-column tables.
All evaluate functions accept numpy arrays and are vectorized.

The only numerical work here is the radial integral

    I_l[n, n'] = integral R_nl(r; w) V(r) R_n'l(r; w) r^2 dr

computed on composite Gauss-Legendre segments split at the points where
the interaction is not smooth.  Every table is validated by node
doubling; a failed check raises QuadratureError rather than returning a
silently inaccurate value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angular import ho_radial_batch
from .errors import QuadratureError


@dataclass(frozen=True)
class InteractionModel:
    """A central pair interaction V(r).

    kind is one of "A" (Gaussian core with Gaussian attraction), "B"
    (exponential core with an attractive inverse-power tail, clamped to a
    constant at short range), "C" (finite square barrier), or "table"
    (piecewise-linear interpolation of the stored samples, continued as
    constants outside the sampled range).
    """

    kind: str
    radii: tuple[float, ...] = field(default=())
    values: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in ("A", "B", "C", "table"):
            raise ValueError(f"unknown interaction kind {self.kind!r}")
        if self.kind == "table":
            r = np.asarray(self.radii)
            if r.size < 2:
                raise ValueError("tabulated interaction needs at least two samples")
            if np.any(np.diff(r) <= 0.0) or r[0] < 0.0:
                raise ValueError("table radii must be non-negative and increasing")
            if len(self.radii) != len(self.values):
                raise ValueError("table radii and values differ in length")
            if not np.all(np.isfinite(self.values)):
                raise ValueError("table values must be finite")

    def evaluate(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.kind == "A":
            return 10.0 * (2.0 * np.exp(-((r / 1.428) ** 2)) - np.exp(-((r / 2.105) ** 2)))
        if self.kind == "B":
            clamped = np.maximum(r, 1.2)
            return 1000.0 * np.exp(-3.0 * clamped) - 40.0 * clamped**-6
        if self.kind == "C":
            return np.where(r < 1.0, 15.0, 0.0)
        return np.interp(r, self.radii, self.values)

    def breakpoints(self) -> tuple[float, ...]:
        """Radii where V or its derivative jumps; quadrature splits here."""
        if self.kind == "B":
            return (1.2,)
        if self.kind == "C":
            return (1.0,)
        if self.kind == "table":
            return tuple(float(r) for r in self.radii)
        return ()

    @property
    def range_end(self) -> float | None:
        """Largest radius with interaction data, None if analytic."""
        return float(self.radii[-1]) if self.kind == "table" else None


def interaction_a() -> InteractionModel:
    return InteractionModel("A")


def interaction_b() -> InteractionModel:
    return InteractionModel("B")


def interaction_c() -> InteractionModel:
    return InteractionModel("C")


def from_table(radii, values) -> InteractionModel:
    return InteractionModel(
        "table",
        tuple(float(r) for r in np.asarray(radii, dtype=float)),
        tuple(float(v) for v in np.asarray(values, dtype=float)),
    )


def from_name(name: str) -> InteractionModel:
    try:
        return {"A": interaction_a, "B": interaction_b, "C": interaction_c}[name.upper()]()
    except KeyError:
        raise ValueError(f"unknown interaction name {name!r}") from None


def load_table(path) -> InteractionModel:
    """Read a two-column (radius, value) text file; '#' starts a comment."""
    rows = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            bare = line.split("#", 1)[0].strip()
            if not bare:
                continue
            parts = bare.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{line_no}: expected two columns, got {len(parts)}")
            rows.append((float(parts[0]), float(parts[1])))
    return from_table([r for r, _ in rows], [v for _, v in rows])


@dataclass(frozen=True)
class RadialIntegralTable:
    """Radial interaction integrals for all (l, n, n') in one basis width."""

    width: float
    l_max: int
    n_max: int
    values: np.ndarray
    notes: tuple[str, ...] = ()

    def get(self, l: int, n1: int, n2: int) -> float:
        return float(self.values[l, n1, n2])


def _segments(model: InteractionModel, r_max: float) -> list[tuple[float, float]]:
    cuts = [0.0] + [b for b in model.breakpoints() if 0.0 < b < r_max] + [r_max]
    return list(zip(cuts[:-1], cuts[1:]))


def _integrate(
    model: InteractionModel, width: float, l_max: int, n_max: int, nodes_per_segment: int
) -> np.ndarray:
    r_max = 12.0 / math.sqrt(width)
    x, w = np.polynomial.legendre.leggauss(nodes_per_segment)
    rs, ws = [], []
    for lo, hi in _segments(model, r_max):
        half = 0.5 * (hi - lo)
        rs.append(lo + half * (x + 1.0))
        ws.append(half * w)
    r = np.concatenate(rs)
    weight = np.concatenate(ws) * r * r * model.evaluate(r)
    out = np.empty((l_max + 1, n_max + 1, n_max + 1))
    for l in range(l_max + 1):
        funcs = ho_radial_batch(n_max, l, width, r)
        out[l] = np.einsum("nr,mr,r->nm", funcs, funcs, weight)
    return out


def radial_matrix_elements(
    model: InteractionModel, width: float, l_max: int, n_max: int
) -> RadialIntegralTable:
    """Interaction integrals with node-doubling validation.

    Starts from 64 nodes per smooth segment and accepts the refined
    table once doubling moves no element by more than 1e-8 relative to
    the overall scale.
    """
    notes: tuple[str, ...] = ()
    r_end = model.range_end
    if r_end is not None and r_end < 12.0 / math.sqrt(width):
        notes = ("interaction table extended as a constant beyond its last sample",)
    stages = [_integrate(model, width, l_max, n_max, 64)]
    for nodes in (128, 256):
        stages.append(_integrate(model, width, l_max, n_max, nodes))
        scale = max(1.0, float(np.max(np.abs(stages[-1]))))
        if float(np.max(np.abs(stages[-1] - stages[-2]))) <= 1e-8 * scale:
            upper = np.triu(stages[-1])
            symmetric = upper + np.triu(stages[-1], 1).transpose(0, 2, 1)
            return RadialIntegralTable(width, l_max, n_max, symmetric, notes)
    worst = np.unravel_index(np.argmax(np.abs(stages[-1] - stages[-2])), stages[-1].shape)
    raise QuadratureError(
        "radial interaction integral did not converge under node doubling "
        f"at (l, n, n') = {worst}"
    )
