"""Probability distributions over triangle shapes at fixed overall size.

A configuration is reduced to two shape coordinates: the length ratio
R/r of the spectator and pair Jacobi vectors, and the tilt angle
phi = 90 deg - theta between them, so phi = 0 is the isosceles line
(apex particle above the pair) and phi = +-90 deg are collinear
arrangements.  At fixed hyperradius h (r = sqrt(2) h cos(beta),
R = sqrt(3/2) h sin(beta), tan(beta) = 2 (R/r) / sqrt(3)) the density

    rho(phi, R/r) = 8 pi^2 / (2L + 1) * h^5 * sum_Q |psi_Q|^2

is orientation-integrated and rotationally invariant; the surface
measure 3 sqrt(3) cos^2(beta) sin^2(beta) dbeta sin(theta) dtheta is
not folded into the stored values.

Landmark shapes: RT the equilateral triangle at (0, sqrt(3)/2), B and
B' the symmetric collinear arrangements at (+-90, 3/2), C and C' the
two-particle coincidences at (+-90, 1/2).  The two isosceles branches
with the apex at a pair particle cross these landmarks and are provided
for plot overlays, as is the apex-angle map along the phi = 0 line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .observables import (
    _angular_table,
    _channel_wave,
    _parabolic_peak,
    _radial_paired,
    rms_radius,
)
from .solver import Eigenstate

EQUILATERAL_RATIO = math.sqrt(3.0) / 2.0


def shape_vectors(hyper_radius: float, ratio) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi lengths (r, R) at the given size and length ratio."""
    beta = np.arctan(2.0 * np.asarray(ratio, dtype=float) / math.sqrt(3.0))
    r = math.sqrt(2.0) * hyper_radius * np.cos(beta)
    big_r = math.sqrt(1.5) * hyper_radius * np.sin(beta)
    return r, big_r


def ist_apex_angle(ratio) -> np.ndarray:
    """Apex angle (degrees) of the isosceles triangle on the phi = 0 line."""
    rr2 = np.asarray(ratio, dtype=float) ** 2
    return np.degrees(np.arccos((rr2 - 0.25) / (rr2 + 0.25)))


def ist_branches(phi_deg) -> tuple[np.ndarray, np.ndarray]:
    """Length ratios of the two pair-apex isosceles families."""
    s = np.abs(np.sin(np.radians(np.asarray(phi_deg, dtype=float))))
    root = np.sqrt(3.0 + s * s)
    return 0.5 * (root - s), 0.5 * (root + s)


def special_points() -> dict[str, tuple[float, float]]:
    """Landmark shapes as (phi_deg, ratio) pairs."""
    return {
        "RT": (0.0, EQUILATERAL_RATIO),
        "B": (90.0, 1.5),
        "B'": (-90.0, 1.5),
        "C": (90.0, 0.5),
        "C'": (-90.0, 0.5),
    }


@dataclass(frozen=True, eq=False)
class GeometryCurves:
    """Overlay geometry for shape-density plots."""

    phi_deg: np.ndarray
    ist_lower: np.ndarray
    ist_upper: np.ndarray
    apex_ratio: np.ndarray
    apex_deg: np.ndarray
    points: dict[str, tuple[float, float]]


def geometry_curves(points: int = 181, ratio_max: float = 2.2) -> GeometryCurves:
    phi = np.linspace(-90.0, 90.0, points)
    lower, upper = ist_branches(phi)
    apex_ratio = np.linspace(0.0, ratio_max, points)
    return GeometryCurves(
        phi, lower, upper, apex_ratio, ist_apex_angle(apex_ratio), special_points()
    )


@dataclass(frozen=True, eq=False)
class ShapeGrid:
    """Shape density of one eigenstate at fixed hyperradius."""

    L: int
    parity: int
    statistics: str
    index: int
    energy: float
    gamma: float
    hyper_radius: float
    phi_deg: np.ndarray
    ratio: np.ndarray
    values: np.ndarray
    rt_value: float
    max_value: float
    argmax_phi_deg: float
    argmax_ratio: float
    contour_levels: tuple[float, ...]

    def phi_zero_profile(self) -> tuple[np.ndarray, np.ndarray]:
        """Density along the isosceles line as (ratio, values)."""
        row = int(np.argmin(np.abs(self.phi_deg)))
        return self.ratio, self.values[row]


def ist_peak_ratio(grid: ShapeGrid) -> float:
    """Refined length ratio of the density maximum on the phi = 0 line."""
    ratio, profile = grid.phi_zero_profile()
    return _parabolic_peak(ratio, profile, int(np.argmax(profile)))


def _component_density(state: Eigenstate, hyper_radius, ratio, theta) -> np.ndarray:
    """sum_Q |psi_Q|^2 on the outer grid theta_i x ratio_j, with prefactor."""
    wave = _channel_wave(state)
    r, big_r = shape_vectors(hyper_radius, ratio)
    radial = _radial_paired(wave, r, big_r)
    angular = _angular_table(wave.channels, state.L, theta)
    psi = np.einsum("cqi,cj->qij", angular, radial)
    prefactor = 8.0 * math.pi**2 / (2 * state.L + 1) * hyper_radius**5
    return prefactor * np.sum(psi.real**2 + psi.imag**2, axis=0)


def shape_density(
    state: Eigenstate,
    hyper_radius: float | None = None,
    phi_points: int = 181,
    ratio_points: int = 121,
    ratio_max: float = 2.2,
) -> ShapeGrid:
    """Shape density grid; the default size is the rms hyperradius."""
    if hyper_radius is None:
        hyper_radius = math.sqrt(3.0) * rms_radius(state)
    phi_deg = np.linspace(-90.0, 90.0, phi_points)
    ratio = np.linspace(0.0, ratio_max, ratio_points)
    theta = 0.5 * math.pi - np.radians(phi_deg)
    values = _component_density(state, hyper_radius, ratio, theta)
    rt_value = float(
        _component_density(
            state, hyper_radius, np.asarray([EQUILATERAL_RATIO]), np.asarray([0.5 * math.pi])
        )[0, 0]
    )
    top = int(np.argmax(values))
    row, col = np.unravel_index(top, values.shape)
    max_value = float(values[row, col])
    levels = tuple(float(v) for v in np.linspace(0.0, max_value, 12)[1:-1])
    return ShapeGrid(
        state.L,
        state.parity,
        state.statistics,
        state.index,
        state.energy,
        state.gamma,
        float(hyper_radius),
        phi_deg,
        ratio,
        values,
        rt_value,
        max_value,
        _parabolic_peak(phi_deg, values[:, col], int(row)),
        _parabolic_peak(ratio, values[row, :], int(col)),
        levels,
    )
