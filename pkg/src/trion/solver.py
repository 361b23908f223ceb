"""Internal Hamiltonian of the trapped triple and its eigenstates.

With the center of mass removed, the Hamiltonian splits into two
independent Jacobi oscillators plus the pairwise interaction.  Between
exchange-projected states the interaction sum collapses to three times
the pair term, which acts on the pair coordinate alone.  The working
matrix therefore decomposes into width-independent projected blocks

    H(gamma) = (gamma + 1/gamma)/2 * A1 + (gamma - 1/gamma)/2 * A2
               + 3 * V(gamma)

where A1 and A2 come from the trap and only V carries the interaction
integrals at the pair width gamma/2.  The basis width gamma is a
variational parameter: for each symmetry series the solver minimizes the
lowest eigenvalue over gamma on a coarse geometric grid refined by a
golden-section search.

All energies are internal (the decoupled center-of-mass quantum is not
included); the noninteracting ground state sits at exactly 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import SymmetrizedBasisSet, symmetrized_basis
from .errors import NonexistentSeriesError
from .labels import BasisLabel
from .potentials import InteractionModel, radial_matrix_elements

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class Eigenstate:
    """One eigenstate of a symmetry series, in raw-basis coefficients."""

    L: int
    parity: int
    statistics: str
    index: int
    energy: float
    gamma: float
    n_max: int
    labels: tuple[BasisLabel, ...]
    coefficients: np.ndarray

    @property
    def term(self) -> str:
        return f"{self.L}{'+' if self.parity > 0 else '-'}"


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """Lowest states of one (L, parity, statistics) block."""

    L: int
    parity: int
    statistics: str
    gamma: float
    boundary_warning: bool
    rank: int
    states: tuple[Eigenstate, ...]


@dataclass(frozen=True, eq=False)
class _Workspace:
    """Width-independent projected pieces of the Hamiltonian."""

    bset: SymmetrizedBasisSet
    a1: np.ndarray
    a2: np.ndarray
    pair_groups: tuple[tuple[int, np.ndarray, np.ndarray], ...]
    l_top: int
    n_top: int


def _build_workspace(bset: SymmetrizedBasisSet) -> _Workspace:
    labels = bset.labels
    coeffs = bset.coeffs
    shells = np.array([lab.shell for lab in labels], dtype=float)
    a1 = (coeffs * (shells + 3.0)) @ coeffs.T

    def grouped(key_fn, n_fn, l_fn):
        groups: dict[tuple, list[int]] = {}
        for idx, lab in enumerate(labels):
            groups.setdefault(key_fn(lab), []).append(idx)
        out = []
        for key, members in groups.items():
            members.sort(key=lambda idx: n_fn(labels[idx]))
            pos = np.array(members, dtype=int)
            ns = np.array([n_fn(labels[i]) for i in members], dtype=int)
            out.append((l_fn(labels[members[0]]), pos, ns))
        return out

    pair_groups = grouped(
        lambda lab: (lab.l_a, lab.n_b, lab.l_b), lambda lab: lab.n_a, lambda lab: lab.l_a
    )
    spectator_groups = grouped(
        lambda lab: (lab.n_a, lab.l_a, lab.l_b), lambda lab: lab.n_b, lambda lab: lab.l_b
    )

    rank = coeffs.shape[0]
    a2 = np.zeros((rank, rank))
    for l, pos, ns in pair_groups + spectator_groups:
        if ns.size < 2:
            continue
        block = np.zeros((ns.size, ns.size))
        for i in range(ns.size - 1):
            if ns[i + 1] == ns[i] + 1:
                n = ns[i]
                block[i, i + 1] = block[i + 1, i] = math.sqrt((n + 1) * (n + l + 1.5))
        slice_c = coeffs[:, pos]
        a2 += slice_c @ block @ slice_c.T

    l_top = max((lab.l_a for lab in labels), default=0)
    n_top = max((lab.n_a for lab in labels), default=0)
    return _Workspace(bset, a1, a2, tuple(pair_groups), l_top, n_top)


def _interaction_block(ws: _Workspace, model: InteractionModel, gamma: float) -> np.ndarray:
    table = radial_matrix_elements(model, gamma / 2.0, ws.l_top, ws.n_top)
    rank = ws.bset.coeffs.shape[0]
    out = np.zeros((rank, rank))
    for l_a, pos, ns in ws.pair_groups:
        block = table.values[l_a][np.ix_(ns, ns)]
        slice_c = ws.bset.coeffs[:, pos]
        out += slice_c @ block @ slice_c.T
    return out


def _hamiltonian(ws: _Workspace, model: InteractionModel, gamma: float) -> np.ndarray:
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    trap = 0.5 * (gamma + 1.0 / gamma) * ws.a1 + 0.5 * (gamma - 1.0 / gamma) * ws.a2
    return trap + 3.0 * _interaction_block(ws, model, gamma)


def assemble_hamiltonian(
    bset: SymmetrizedBasisSet, model: InteractionModel, gamma: float
) -> np.ndarray:
    """Projected Hamiltonian matrix of one symmetry block."""
    return _hamiltonian(_build_workspace(bset), model, gamma)


def _golden_section(f, lo: float, hi: float, rel: float = 1e-4) -> float:
    """Minimize a unimodal function of a positive scale variable."""
    a, b = math.log(lo), math.log(hi)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(math.exp(c)), f(math.exp(d))
    while (b - a) > rel:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(math.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(math.exp(d))
    return math.exp(0.5 * (a + b))


@dataclass(frozen=True)
class OptimizeResult:
    gamma: float
    energy: float
    boundary_warning: bool
    evaluations: int


def optimize_gamma(
    model: InteractionModel,
    statistics: str,
    L: int,
    parity: int,
    n_max: int,
    gamma_range: tuple[float, float] = (0.2, 5.0),
    threshold: float = 1e-8,
) -> OptimizeResult:
    """Variationally best basis width for the lowest state of a series."""
    bset = symmetrized_basis(L, parity, statistics, n_max, threshold)
    if not bset.exists:
        raise NonexistentSeriesError(
            f"no {statistics} states with L={L}, parity={parity:+d} at n_max={n_max}"
        )
    ws = _build_workspace(bset)
    calls = 0

    def lowest(gamma: float) -> float:
        nonlocal calls
        calls += 1
        return float(np.linalg.eigvalsh(_hamiltonian(ws, model, gamma))[0])

    grid = np.geomspace(gamma_range[0], gamma_range[1], 11)
    energies = [lowest(g) for g in grid]
    best = int(np.argmin(energies))
    boundary = best in (0, len(grid) - 1)
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    gamma = _golden_section(lowest, lo, hi)
    return OptimizeResult(gamma, lowest(gamma), boundary, calls)


def solve_series(
    model: InteractionModel,
    statistics: str,
    L: int,
    parity: int,
    n_max: int,
    n_states: int = 1,
    gamma: float | None = None,
    gamma_range: tuple[float, float] = (0.2, 5.0),
    threshold: float = 1e-8,
) -> SeriesSolution:
    """Lowest eigenstates of one symmetry series.

    gamma=None optimizes the basis width on the lowest state and then
    keeps it for every returned state of the series.
    """
    bset = symmetrized_basis(L, parity, statistics, n_max, threshold)
    if not bset.exists:
        raise NonexistentSeriesError(
            f"no {statistics} states with L={L}, parity={parity:+d} at n_max={n_max}"
        )
    boundary = False
    if gamma is None:
        opt = optimize_gamma(model, statistics, L, parity, n_max, gamma_range, threshold)
        gamma, boundary = opt.gamma, opt.boundary_warning
    ws = _build_workspace(bset)
    energies, vectors = np.linalg.eigh(_hamiltonian(ws, model, gamma))
    count = min(n_states, bset.rank)
    states = tuple(
        Eigenstate(
            L,
            parity,
            statistics,
            i + 1,
            float(energies[i]),
            float(gamma),
            n_max,
            bset.labels,
            bset.coeffs.T @ vectors[:, i],
        )
        for i in range(count)
    )
    return SeriesSolution(L, parity, statistics, float(gamma), boundary, bset.rank, states)


@dataclass(frozen=True)
class SpectrumRow:
    L: int
    parity: int
    index: int
    energy: float
    gamma: float
    r_rms: float
    boundary_warning: bool

    @property
    def term(self) -> str:
        return f"{self.L}{'+' if self.parity > 0 else '-'}"


@dataclass(frozen=True)
class SpectrumTable:
    """Lowest states of every series up to l_max, with sizes."""

    statistics: str
    n_max: int
    rows: tuple[SpectrumRow, ...]
    nonexistent: tuple[tuple[int, int], ...]

    @property
    def ground_energy(self) -> float:
        return min(row.energy for row in self.rows)

    def shifted_rows(self) -> tuple[SpectrumRow, ...]:
        """Rows with energies measured from the table's lowest state."""
        shift = self.ground_energy
        return tuple(
            SpectrumRow(
                row.L,
                row.parity,
                row.index,
                row.energy - shift,
                row.gamma,
                row.r_rms,
                row.boundary_warning,
            )
            for row in self.rows
        )


def spectrum(
    model: InteractionModel,
    statistics: str,
    n_max: int = 20,
    l_max: int = 4,
    n_states: int = 1,
    gamma: float | None = None,
    gamma_range: tuple[float, float] = (0.2, 5.0),
    threshold: float = 1e-8,
) -> SpectrumTable:
    """Survey all (L, parity) series up to l_max."""
    from .observables import rms_radius

    rows = []
    missing = []
    for L in range(l_max + 1):
        for parity in (1, -1):
            try:
                solution = solve_series(
                    model, statistics, L, parity, n_max, n_states, gamma, gamma_range, threshold
                )
            except NonexistentSeriesError:
                missing.append((L, parity))
                continue
            for state in solution.states:
                rows.append(
                    SpectrumRow(
                        L,
                        parity,
                        state.index,
                        state.energy,
                        solution.gamma,
                        rms_radius(state),
                        solution.boundary_warning,
                    )
                )
    return SpectrumTable(statistics, n_max, tuple(rows), tuple(missing))


@dataclass(frozen=True)
class ConvergenceRow:
    n_max: int
    gamma: float
    energy: float


def convergence_scan(
    model: InteractionModel,
    statistics: str,
    L: int,
    parity: int,
    n_maxes,
    gamma_range: tuple[float, float] = (0.2, 5.0),
    threshold: float = 1e-8,
) -> tuple[ConvergenceRow, ...]:
    """Ground energy of one series at several cutoffs, width reoptimized."""
    out = []
    for n_max in n_maxes:
        solution = solve_series(
            model, statistics, L, parity, int(n_max), 1, None, gamma_range, threshold
        )
        out.append(ConvergenceRow(int(n_max), solution.gamma, solution.states[0].energy))
    return tuple(out)
