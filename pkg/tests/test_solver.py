"""Solver checks: exact noninteracting limits, benchmark energies, API."""

import numpy as np
import pytest

from trion.basis import symmetrized_basis
from trion.errors import NonexistentSeriesError
from trion.potentials import from_table, interaction_a
from trion.solver import (
    assemble_hamiltonian,
    convergence_scan,
    optimize_gamma,
    solve_series,
    spectrum,
)


def zero_interaction():
    return from_table([0.0, 1.0], [0.0, 0.0])


class TestNoninteracting:
    def test_ground_energy_is_three(self):
        solution = solve_series(zero_interaction(), "bosons", 0, 1, 12, gamma=1.0)
        assert solution.states[0].energy == pytest.approx(3.0, abs=1e-9)

    def test_low_spectrum_multiplets(self):
        solution = solve_series(
            zero_interaction(), "bosons", 0, 1, 12, n_states=4, gamma=1.0
        )
        energies = [s.energy for s in solution.states]
        assert energies == pytest.approx([3.0, 5.0, 7.0, 7.0], abs=1e-8)

    def test_optimal_width_is_unity(self):
        # The landscape is exactly flat at the bottom (E(1) = 3 with the
        # truncation error vanishing for nearby widths), so the located
        # width is only loosely pinned; the energy is pinned hard.
        result = optimize_gamma(zero_interaction(), "bosons", 0, 1, 10)
        assert result.gamma == pytest.approx(1.0, abs=0.05)
        assert result.energy == pytest.approx(3.0, abs=1e-8)
        assert not result.boundary_warning

    def test_fermion_ground_energy(self):
        # Lowest fermion series is 1+; two quanta above the boson ground.
        solution = solve_series(zero_interaction(), "fermions", 1, 1, 12, gamma=1.0)
        assert solution.states[0].energy == pytest.approx(5.0, abs=1e-8)


class TestHamiltonian:
    def test_symmetric_matrix(self):
        bset = symmetrized_basis(2, 1, "bosons", 10)
        H = assemble_hamiltonian(bset, interaction_a(), 1.3)
        assert np.max(np.abs(H - H.T)) < 1e-12

    def test_gamma_one_matches_direct_sum(self):
        # At gamma=1 the kinetic-plus-trap part is diagonal in the shell
        # number, so the noninteracting eigenvalues are exactly N + 3,
        # one copy per symmetrized vector.  Each projector row lives in
        # a single shell, readable from its largest coefficient.
        bset = symmetrized_basis(0, 1, "bosons", 8)
        H = assemble_hamiltonian(bset, zero_interaction(), 1.0)
        eigenvalues = np.sort(np.linalg.eigvalsh(H))
        row_shells = sorted(
            bset.labels[int(np.argmax(np.abs(row)))].shell for row in bset.coeffs
        )
        assert eigenvalues == pytest.approx(np.array(row_shells) + 3.0, abs=1e-9)


class TestBenchmarkEnergies:
    @pytest.mark.parametrize(
        "n_max,expected",
        [(16, 2.06561), (18, 2.06558), (20, 2.06557)],
    )
    def test_ground_state_convergence(self, n_max, expected):
        solution = solve_series(interaction_a(), "bosons", 0, 1, n_max)
        assert solution.states[0].energy == pytest.approx(expected, abs=5e-4)

    def test_variational_monotonicity(self):
        rows = convergence_scan(interaction_a(), "bosons", 0, 1, (8, 12, 16))
        energies = [row.energy for row in rows]
        assert energies[0] >= energies[1] >= energies[2]


class TestSeriesExistence:
    def test_null_series_raises(self):
        with pytest.raises(NonexistentSeriesError):
            solve_series(interaction_a(), "bosons", 0, -1, 12)

    def test_null_series_raises_in_optimizer(self):
        with pytest.raises(NonexistentSeriesError):
            optimize_gamma(interaction_a(), "bosons", 0, -1, 12)


@pytest.fixture(scope="module")
def table():
    return spectrum(interaction_a(), "bosons", n_max=8, l_max=2)


class TestSpectrumTable:

    def test_nonexistent_lists_zero_minus(self, table):
        assert table.nonexistent == ((0, -1),)

    def test_row_count(self, table):
        # L = 0..2, both parities, minus the one empty series.
        assert len(table.rows) == 5

    def test_ground_is_minimum(self, table):
        assert table.ground_energy == pytest.approx(
            min(row.energy for row in table.rows)
        )

    def test_shift_anchors_at_zero(self, table):
        shifted = table.shifted_rows()
        assert min(row.energy for row in shifted) == pytest.approx(0.0, abs=1e-12)

    def test_rows_carry_observables(self, table):
        for row in table.rows:
            assert row.gamma > 0
            assert row.r_rms > 0
            assert row.term in {"0+", "1+", "2+", "1-", "2-"}

    def test_multiple_states_indexing(self):
        solution = solve_series(
            interaction_a(), "bosons", 0, 1, 8, n_states=2, gamma=1.5
        )
        first, second = solution.states
        assert first.index == 1 and second.index == 2
        assert first.energy < second.energy
