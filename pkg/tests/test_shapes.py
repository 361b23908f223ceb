"""Shape-space geometry and fixed-hyperradius shape densities."""

import numpy as np
import pytest

from trion.observables import body_frame_amplitudes, rms_radius
from trion.potentials import from_table, interaction_a
from trion.shapes import (
    EQUILATERAL_RATIO,
    geometry_curves,
    ist_apex_angle,
    ist_branches,
    ist_peak_ratio,
    shape_density,
    shape_vectors,
    special_points,
)
from trion.solver import solve_series

_CACHE = {}


def solved(statistics, L, parity, n_max=8):
    key = (statistics, L, parity, n_max)
    if key not in _CACHE:
        _CACHE[key] = solve_series(
            interaction_a(), statistics, L, parity, n_max
        ).states[0]
    return _CACHE[key]


class TestGeometry:
    def test_shape_vectors_recover_hyperradius(self):
        for h in (0.7, 1.0, 2.3):
            for ratio in (0.0, 0.5, EQUILATERAL_RATIO, 1.8):
                r, R = shape_vectors(h, ratio)
                assert 0.5 * r * r + 2.0 * R * R / 3.0 == pytest.approx(
                    h * h, rel=1e-14
                )
                if r > 0:
                    assert R / r == pytest.approx(ratio, rel=1e-12)

    def test_equilateral_side_ratio(self):
        # At the equilateral shape all three separations are equal.
        r, R = shape_vectors(1.0, EQUILATERAL_RATIO)
        side = np.hypot(r / 2.0, R)  # distance from particle 1 to 3
        assert side == pytest.approx(r, rel=1e-12)

    @pytest.mark.parametrize(
        "ratio,angle",
        [(EQUILATERAL_RATIO, 60.0), (0.5, 90.0), (0.0, 180.0)],
    )
    def test_apex_angle_landmarks(self, ratio, angle):
        assert ist_apex_angle(ratio) == pytest.approx(angle, abs=1e-10)

    def test_isosceles_branches_meet_at_equilateral(self):
        lower, upper = ist_branches(0.0)
        assert lower == pytest.approx(EQUILATERAL_RATIO, rel=1e-12)
        assert upper == pytest.approx(EQUILATERAL_RATIO, rel=1e-12)

    def test_isosceles_branches_at_collinear(self):
        # At phi = +-90 the branches hit the pair-coincidence point and
        # the symmetric collinear point.
        lower, upper = ist_branches(90.0)
        assert lower == pytest.approx(0.5, rel=1e-12)
        assert upper == pytest.approx(1.5, rel=1e-12)

    def test_special_points_table(self):
        points = special_points()
        assert points["RT"] == (0.0, pytest.approx(EQUILATERAL_RATIO))
        assert points["B"] == (90.0, pytest.approx(1.5))
        assert points["C'"] == (-90.0, pytest.approx(0.5))

    def test_curves_bundle(self):
        curves = geometry_curves(points=91)
        assert len(curves.phi_deg) == 91
        assert curves.ist_lower[45] == pytest.approx(EQUILATERAL_RATIO)
        # Branch values must satisfy the defining isosceles condition:
        # one of the spectator separations equals the pair separation
        # once theta = pi/2 - phi is imposed.  Which one depends on the
        # sign of phi.
        for phi, ratio in zip(curves.phi_deg[::10], curves.ist_upper[::10]):
            theta = np.radians(90.0 - phi)
            r, R = shape_vectors(1.0, ratio)
            d13 = np.sqrt(R * R + r * r / 4.0 + r * R * np.cos(theta))
            d23 = np.sqrt(R * R + r * r / 4.0 - r * R * np.cos(theta))
            assert min(abs(d13 - r), abs(d23 - r)) < 1e-10


class TestShapeDensity:
    def test_noninteracting_ground_is_flat(self):
        # The lowest noninteracting state has a pure Gaussian in the
        # hyperradius, so at fixed hyperradius every shape is equally
        # likely and the grid is constant.
        model = from_table([0.0, 1.0], [0.0, 0.0])
        state = solve_series(model, "bosons", 0, 1, 8, gamma=1.0).states[0]
        grid = shape_density(state, phi_points=31, ratio_points=21)
        assert np.ptp(grid.values) < 1e-10 * np.max(grid.values)

    def test_values_match_amplitude_sum(self):
        # Spot check the grid against a direct amplitude evaluation.
        state = solved("bosons", 2, 1)
        grid = shape_density(state, phi_points=19, ratio_points=13)
        h = grid.hyper_radius
        prefactor = 8.0 * np.pi**2 / (2.0 * state.L + 1.0) * h**5
        for i in (3, 9, 15):
            for j in (2, 7, 11):
                r, R = shape_vectors(h, grid.ratio[j])
                theta = np.pi / 2.0 - np.radians(grid.phi_deg[i])
                psi = body_frame_amplitudes(state, r, R, theta)
                expected = prefactor * float(np.sum(np.abs(psi) ** 2))
                assert grid.values[i, j] == pytest.approx(expected, rel=1e-12)

    def test_default_hyperradius_is_mean(self):
        state = solved("bosons", 0, 1)
        grid = shape_density(state, phi_points=11, ratio_points=9)
        assert grid.hyper_radius == pytest.approx(
            np.sqrt(3.0) * rms_radius(state), rel=1e-12
        )

    def test_ground_state_peaks_at_equilateral(self):
        grid = shape_density(solved("bosons", 0, 1), phi_points=61, ratio_points=45)
        assert grid.argmax_phi_deg == pytest.approx(0.0, abs=2.0)
        assert grid.argmax_ratio == pytest.approx(EQUILATERAL_RATIO, abs=0.05)
        assert grid.rt_value == pytest.approx(grid.max_value, rel=0.02)

    def test_avoided_equilateral_point(self):
        # Bosonic 3+ cannot reach the equilateral shape.
        grid = shape_density(solved("bosons", 3, 1), phi_points=31, ratio_points=25)
        assert grid.rt_value < 1e-12 * grid.max_value

    def test_accessible_equilateral_point(self):
        grid = shape_density(solved("bosons", 3, -1), phi_points=31, ratio_points=25)
        assert grid.rt_value > 0.1 * grid.max_value

    def test_isosceles_peak_apex_angle(self):
        # The avoided-equilateral state parks on the isosceles line at
        # an opening angle somewhat above 90 degrees.
        grid = shape_density(
            solved("bosons", 3, 1, n_max=12), phi_points=61, ratio_points=121
        )
        apex = ist_apex_angle(ist_peak_ratio(grid))
        assert apex == pytest.approx(94.0, abs=4.0)

    def test_contour_levels_increasing_below_max(self):
        grid = shape_density(solved("bosons", 2, 1), phi_points=21, ratio_points=15)
        levels = np.array(grid.contour_levels)
        assert len(levels) == 10
        assert np.all(np.diff(levels) > 0)
        assert levels[-1] < grid.max_value

    def test_phi_zero_profile_slices_center(self):
        grid = shape_density(solved("bosons", 0, 1), phi_points=21, ratio_points=15)
        ratio, values = grid.phi_zero_profile()
        center = np.argmin(np.abs(grid.phi_deg))
        assert values == pytest.approx(grid.values[center])
        assert ratio == pytest.approx(grid.ratio)

    def test_reflection_symmetry_in_phi(self):
        # phi -> -phi swaps which pair particle 3 leans toward; the
        # density cannot care for identical particles.
        grid = shape_density(solved("bosons", 2, 1), phi_points=21, ratio_points=11)
        assert grid.values == pytest.approx(grid.values[::-1, :], rel=1e-10)
