"""Densities, sizes, and body-frame component weights of eigenstates.

The body frame places the three particles in the xy plane with the
spectator Jacobi vector along y, so z is the plane normal and Q counts
angular momentum about that normal.  With the pair vector at angle theta
from the spectator vector, the component amplitudes are

    psi_Q(r, R, theta) = sum_k c_k  R_{na la}(r) R_{nb lb}(R)
        * sum_ma <la ma lb Q-ma | L Q>
          Y_{la ma}(pi/2, pi/2 - theta) Y_{lb Q-ma}(pi/2, pi/2)

and the weight of component Q integrates |psi_Q|^2 over r, R, theta with
the volume factor r^2 R^2 sin(theta) and the orientation volume
8 pi^2 / (2L + 1).  Weights for +Q and -Q are equal and reported folded.

The one-body density uses the M = L member of the multiplet.  Because a
particle position is proportional to the spectator vector, integrating
out the pair coordinate collapses analytically through orthonormality
of the pair orbitals; no quadrature is involved except in the optional
normalization check.  All lengths are trap units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import clebsch_gordan, ho_r2_element, ho_radial_batch, spherical_harmonic_all
from .errors import QuadratureError
from .labels import BasisLabel
from .solver import Eigenstate
from .symmetry import rule1_allowed_q

_PAIR_WIDTH = 0.5        # pair width is gamma / 2
_SPECTATOR_WIDTH = 2.0 / 3.0  # spectator width is 2 gamma / 3


def _gauss(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _parabolic_peak(axis: np.ndarray, values: np.ndarray, j: int) -> float:
    """Vertex of the parabola through three points around a grid maximum."""
    if j <= 0 or j >= values.size - 1:
        return float(axis[j])
    left, mid, right = values[j - 1], values[j], values[j + 1]
    denom = left - 2.0 * mid + right
    if denom >= 0.0:
        return float(axis[j])
    shift = 0.5 * (left - right) / denom
    return float(axis[j] + shift * (axis[1] - axis[0]))


def mean_square_hyperradius(state: Eigenstate) -> float:
    """Expectation of r^2/2 + 2 R^2/3 in the truncated basis."""
    w_pair = _PAIR_WIDTH * state.gamma
    w_spec = _SPECTATOR_WIDTH * state.gamma
    index = {lab: k for k, lab in enumerate(state.labels)}
    c = state.coefficients
    total = 0.0
    for k, lab in enumerate(state.labels):
        total += c[k] * c[k] * (
            0.5 * ho_r2_element(lab.n_a, lab.n_a, lab.l_a, w_pair)
            + (2.0 / 3.0) * ho_r2_element(lab.n_b, lab.n_b, lab.l_b, w_spec)
        )
        up_a = BasisLabel(lab.n_a + 1, lab.l_a, lab.n_b, lab.l_b)
        if up_a in index:
            total += (
                2.0 * c[k] * c[index[up_a]]
                * 0.5 * ho_r2_element(lab.n_a, lab.n_a + 1, lab.l_a, w_pair)
            )
        up_b = BasisLabel(lab.n_a, lab.l_a, lab.n_b + 1, lab.l_b)
        if up_b in index:
            total += (
                2.0 * c[k] * c[index[up_b]]
                * (2.0 / 3.0) * ho_r2_element(lab.n_b, lab.n_b + 1, lab.l_b, w_spec)
            )
    return total


def rms_radius(state: Eigenstate) -> float:
    """Root-mean-square distance of one particle from the trap center."""
    return math.sqrt(mean_square_hyperradius(state) / 3.0)


@dataclass(frozen=True, eq=False)
class _ChannelWave:
    """State coefficients regrouped as dense (n_a, n_b) blocks per channel."""

    L: int
    gamma: float
    channels: tuple[tuple[int, int], ...]
    blocks: tuple[np.ndarray, ...]
    n_top_a: int
    n_top_b: int


def _channel_wave(state: Eigenstate) -> _ChannelWave:
    n_top_a = max(lab.n_a for lab in state.labels)
    n_top_b = max(lab.n_b for lab in state.labels)
    grouped: dict[tuple[int, int], np.ndarray] = {}
    for lab, c in zip(state.labels, state.coefficients):
        block = grouped.setdefault(
            (lab.l_a, lab.l_b), np.zeros((n_top_a + 1, n_top_b + 1))
        )
        block[lab.n_a, lab.n_b] = c
    channels = tuple(sorted(grouped))
    return _ChannelWave(
        state.L,
        state.gamma,
        channels,
        tuple(grouped[key] for key in channels),
        n_top_a,
        n_top_b,
    )


def _radial_profiles(wave: _ChannelWave, r, R) -> tuple[dict, dict]:
    w_pair = _PAIR_WIDTH * wave.gamma
    w_spec = _SPECTATOR_WIDTH * wave.gamma
    pair = {
        l: ho_radial_batch(wave.n_top_a, l, w_pair, np.asarray(r, dtype=float))
        for l in sorted({la for la, _ in wave.channels})
    }
    spec = {
        l: ho_radial_batch(wave.n_top_b, l, w_spec, np.asarray(R, dtype=float))
        for l in sorted({lb for _, lb in wave.channels})
    }
    return pair, spec


def _radial_outer(wave: _ChannelWave, r, R) -> np.ndarray:
    """F[c, i, j] over the tensor grid r_i x R_j."""
    pair, spec = _radial_profiles(wave, r, R)
    out = np.empty((len(wave.channels), np.size(r), np.size(R)))
    for c, (la, lb) in enumerate(wave.channels):
        out[c] = pair[la].T @ wave.blocks[c] @ spec[lb]
    return out


def _radial_paired(wave: _ChannelWave, r, R) -> np.ndarray:
    """F[c, j] along a curve (r_j, R_j)."""
    pair, spec = _radial_profiles(wave, r, R)
    out = np.empty((len(wave.channels), np.size(r)))
    for c, (la, lb) in enumerate(wave.channels):
        out[c] = np.einsum("nm,nj,mj->j", wave.blocks[c], pair[la], spec[lb])
    return out


def _angular_table(
    channels: tuple[tuple[int, int], ...], L: int, theta
) -> np.ndarray:
    """A[c, Q+L, t]: in-plane angular factor of each channel and component."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    l_top = max(max(la, lb) for la, lb in channels)
    y_pair = spherical_harmonic_all(l_top, 0.5 * np.pi, 0.5 * np.pi - theta)
    y_spec = spherical_harmonic_all(l_top, np.asarray(0.5 * np.pi), np.asarray(0.5 * np.pi))
    out = np.zeros((len(channels), 2 * L + 1, theta.size), dtype=complex)
    for c, (la, lb) in enumerate(channels):
        for q in range(-L, L + 1):
            acc = np.zeros(theta.size, dtype=complex)
            for ma in range(-la, la + 1):
                mb = q - ma
                if abs(mb) > lb:
                    continue
                cg = clebsch_gordan(la, ma, lb, mb, L, q)
                if cg == 0.0:
                    continue
                acc += cg * complex(y_spec[(lb, mb)]) * y_pair[(la, ma)]
            out[c, q + L] = acc
    return out


def body_frame_amplitudes(state: Eigenstate, r, R, theta) -> np.ndarray:
    """psi_Q at in-plane configurations; leading axis runs Q = -L .. L.

    r, R, theta broadcast against each other; theta is the angle between
    the pair and spectator vectors.
    """
    r, R, theta = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(R, dtype=float), np.asarray(theta, dtype=float)
    )
    shape = r.shape
    wave = _channel_wave(state)
    radial = _radial_paired(wave, r.ravel(), R.ravel())
    angular = _angular_table(wave.channels, state.L, theta.ravel())
    psi = np.einsum("cqp,cp->qp", angular, radial)
    return psi.reshape((2 * state.L + 1,) + shape)


@dataclass(frozen=True)
class WeightRow:
    q: int
    weight: float
    allowed: bool


@dataclass(frozen=True)
class WeightVector:
    """Folded body-frame component weights of one eigenstate."""

    L: int
    parity: int
    statistics: str
    index: int
    energy: float
    gamma: float
    rows: tuple[WeightRow, ...]
    total: float

    def weight(self, q: int) -> float:
        return self.rows[q].weight


def q_weights(
    state: Eigenstate,
    radial_nodes: int = 48,
    angular_nodes: int = 32,
    tolerance: float = 1e-4,
) -> WeightVector:
    """Weights of the folded components Q = 0 .. L.

    The weights of all 2L + 1 components are integrated independently;
    their sum must come out as 1 within tolerance, otherwise the
    quadrature is deemed unreliable and QuadratureError is raised.
    """
    L = state.L
    wave = _channel_wave(state)
    w_pair = _PAIR_WIDTH * state.gamma
    w_spec = _SPECTATOR_WIDTH * state.gamma
    xr, wr = _gauss(0.0, 12.0 / math.sqrt(w_pair), radial_nodes)
    xs, ws = _gauss(0.0, 12.0 / math.sqrt(w_spec), radial_nodes)
    xt, wt = _gauss(0.0, math.pi, angular_nodes)
    radial = _radial_outer(wave, xr, xs)
    angular = _angular_table(wave.channels, L, xt)
    psi = np.einsum("cij,cqt->qijt", radial, angular, optimize=True)
    measure = (
        (wr * xr * xr)[:, None, None]
        * (ws * xs * xs)[None, :, None]
        * (wt * np.sin(xt))[None, None, :]
    )
    prefactor = 8.0 * math.pi**2 / (2 * L + 1)
    per_component = prefactor * np.einsum(
        "qijt,ijt->q", psi.real**2 + psi.imag**2, measure, optimize=True
    )
    total = float(per_component.sum())
    if abs(total - 1.0) > tolerance:
        raise QuadratureError(
            f"component weights sum to {total:.8f}, expected 1 within {tolerance:g}"
        )
    allowed = set(rule1_allowed_q(L, state.parity))
    rows = []
    for q in range(L + 1):
        folded = per_component[L + q] + (per_component[L - q] if q > 0 else 0.0)
        rows.append(WeightRow(q, float(folded), q in allowed))
    return WeightVector(
        L,
        state.parity,
        state.statistics,
        state.index,
        state.energy,
        state.gamma,
        tuple(rows),
        total,
    )


def _density_grid(state: Eigenstate, r3, theta_rad) -> np.ndarray:
    """One-body density of the M = L state on the r3 x theta grid."""
    wave = _channel_wave(state)
    L = state.L
    w_spec = _SPECTATOR_WIDTH * state.gamma
    r3 = np.atleast_1d(np.asarray(r3, dtype=float))
    theta_rad = np.atleast_1d(np.asarray(theta_rad, dtype=float))
    lbs = sorted({lb for _, lb in wave.channels})
    spec = {l: ho_radial_batch(wave.n_top_b, l, w_spec, 1.5 * r3) for l in lbs}
    harmonics = spherical_harmonic_all(max(lbs), theta_rad, np.asarray(0.0))
    rho = np.zeros((r3.size, theta_rad.size))
    for la in sorted({la for la, _ in wave.channels}):
        members = [(c, lb) for c, (ca, lb) in enumerate(wave.channels) if ca == la]
        for ma in range(-la, la + 1):
            mb = L - ma
            amp = np.zeros((wave.n_top_a + 1, r3.size, theta_rad.size), dtype=complex)
            touched = False
            for c, lb in members:
                if abs(mb) > lb:
                    continue
                cg = clebsch_gordan(la, ma, lb, mb, L, L)
                if cg == 0.0:
                    continue
                radial = wave.blocks[c] @ spec[lb]
                amp += cg * radial[:, :, None] * harmonics[(lb, mb)][None, None, :]
                touched = True
            if touched:
                rho += np.sum(amp.real**2 + amp.imag**2, axis=0)
    return 3.375 * rho


def _density_norm(state: Eigenstate, nodes: int = 64) -> float:
    w_spec = _SPECTATOR_WIDTH * state.gamma
    xr, wr = _gauss(0.0, 8.0 / math.sqrt(w_spec), nodes)
    xt, wt = _gauss(0.0, math.pi, nodes)
    rho = _density_grid(state, xr, xt)
    return float(
        2.0 * math.pi * ((wr * xr * xr)[:, None] * (wt * np.sin(xt))[None, :] * rho).sum()
    )


@dataclass(frozen=True, eq=False)
class OneBodyDensity:
    """Density of one particle for the M = L state, on a polar grid."""

    L: int
    parity: int
    statistics: str
    index: int
    energy: float
    gamma: float
    r3: np.ndarray
    theta_deg: np.ndarray
    values: np.ndarray
    norm: float
    peak_theta_deg: float
    peak_r3: float


def density_peak_angle(state: Eigenstate, r3: float | None = None) -> float:
    """Polar angle (degrees, folded to [0, 90]) of the density maximum.

    The scan runs along a circle of radius r3, by default the rms
    particle distance.  Degenerate mirror peaks report the smaller angle.
    """
    if r3 is None:
        r3 = rms_radius(state)
    theta = np.linspace(0.0, math.pi, 181)
    values = _density_grid(state, np.asarray([r3]), theta)[0]
    peak = _parabolic_peak(np.degrees(theta), values, int(np.argmax(values)))
    return min(peak, 180.0 - peak)


def one_body_density(
    state: Eigenstate,
    r3: np.ndarray | None = None,
    theta_points: int = 181,
    norm_tolerance: float = 1e-3,
) -> OneBodyDensity:
    """Density on a (r3, theta) grid, with an independent norm check."""
    if r3 is None:
        r3 = np.linspace(0.0, 3.5 * rms_radius(state), 121)
    else:
        r3 = np.asarray(r3, dtype=float)
    theta_deg = np.linspace(0.0, 180.0, theta_points)
    values = _density_grid(state, r3, np.radians(theta_deg))
    norm = _density_norm(state)
    if abs(norm - 1.0) > norm_tolerance:
        raise QuadratureError(
            f"one-body density integrates to {norm:.6f}, expected 1 within {norm_tolerance:g}"
        )
    peak_r3 = rms_radius(state)
    return OneBodyDensity(
        state.L,
        state.parity,
        state.statistics,
        state.index,
        state.energy,
        state.gamma,
        r3,
        theta_deg,
        values,
        norm,
        density_peak_angle(state, peak_r3),
        peak_r3,
    )
