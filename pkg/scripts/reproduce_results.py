#!/usr/bin/env python3
"""Regenerate the headline numbers in one run.

Prints, for each pair interaction: the optimized spectra with sizes,
the body-frame weight table, one-body density peak angles, and the
shape-density structure of selected states.  Defaults match the
converged settings used by the acceptance tests; pass a smaller
--nmax for a quick look.
"""

import argparse
import sys

import numpy as np

from trion.observables import density_peak_angle, q_weights
from trion.potentials import from_name
from trion.shapes import EQUILATERAL_RATIO, ist_apex_angle, ist_peak_ratio, shape_density
from trion.solver import convergence_scan, solve_series, spectrum
from trion.symmetry import classify_all

SERIES = [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (1, -1), (2, -1), (3, -1), (4, -1)]


def term(L, parity):
    return f"{L}{'+' if parity > 0 else '-'}"


def convergence_block(model, n_maxes):
    print("Ground-state convergence (boson 0+):")
    for row in convergence_scan(model, "bosons", 0, 1, n_maxes):
        print(f"  n_max={row.n_max:<3d} gamma={row.gamma:.4f} E={row.energy:.6f}")
    print()


def spectrum_block(model, statistics, n_max):
    table = spectrum(model, statistics, n_max, l_max=4)
    groups = {
        p.term: p.group for p in classify_all(statistics, l_max=4, n_max=n_max)
    }
    print(f"Spectrum, {statistics}, n_max={n_max}:")
    print(f"  {'term':<5} {'E':>10} {'E-E0':>8} {'r_rms':>7} {'gamma':>7} group")
    e0 = table.ground_energy
    for row in sorted(table.rows, key=lambda r: r.energy):
        print(
            f"  {row.term:<5} {row.energy:>10.5f} {row.energy - e0:>8.4f}"
            f" {row.r_rms:>7.4f} {row.gamma:>7.4f}   {groups[row.term]}"
        )
    if table.nonexistent:
        missing = ", ".join(term(L, p) for L, p in table.nonexistent)
        print(f"  no symmetric state: {missing}")
    print()
    return table


def weights_block(model, n_max):
    print(f"Body-frame component weights, bosons, n_max={n_max}:")
    for L, parity in SERIES:
        state = solve_series(model, "bosons", L, parity, n_max).states[0]
        vector = q_weights(state)
        cells = "  ".join(
            f"W{row.q}={row.weight:.3f}" for row in vector.rows if row.allowed
        )
        print(f"  {term(L, parity):<4} {cells}")
    print()


def density_block(model, n_max):
    print(f"One-body density peak angles, bosons, n_max={n_max}:")
    for L, parity in [(2, 1), (3, 1), (3, -1), (4, -1)]:
        state = solve_series(model, "bosons", L, parity, n_max).states[0]
        print(f"  {term(L, parity):<4} peak at {density_peak_angle(state):6.2f} deg")
    print()


def shape_block(model, n_max):
    print(f"Shape densities at the mean hyper-radius, bosons, n_max={n_max}:")
    targets = [(0, 1, 1), (2, 1, 1), (3, -1, 1), (3, 1, 1), (1, -1, 1), (2, -1, 1), (4, 1, 2)]
    for L, parity, index in targets:
        state = solve_series(model, "bosons", L, parity, n_max, n_states=index).states[index - 1]
        grid = shape_density(state)
        label = term(L, parity) + ("'" if index == 2 else "")
        rt = grid.rt_value / grid.max_value
        line = (
            f"  {label:<4} max at phi={grid.argmax_phi_deg:6.1f} deg,"
            f" R/r={grid.argmax_ratio:5.3f}, rt/max={rt:.2e}"
        )
        if rt < 1e-6:
            apex = ist_apex_angle(ist_peak_ratio(grid))
            line += f", isosceles apex {apex:.1f} deg"
        print(line)
    print(f"  (equilateral point: phi=0, R/r={EQUILATERAL_RATIO:.4f})")
    print()


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--interaction", default="A", choices=("A", "B", "C"))
    parser.add_argument("--nmax", type=int, default=16)
    parser.add_argument("--table-nmax", type=int, default=20,
                        help="cutoff for the weight table")
    parser.add_argument("--skip-fermions", action="store_true")
    args = parser.parse_args(argv)

    model = from_name(args.interaction)
    print(f"=== pair interaction {args.interaction} ===\n")
    convergence_block(model, (12, 16, 20) if args.nmax >= 16 else (8, 10, 12))
    spectrum_block(model, "bosons", args.nmax)
    if not args.skip_fermions:
        spectrum_block(model, "fermions", args.nmax)
    weights_block(model, args.table_nmax)
    density_block(model, args.nmax)
    shape_block(model, args.nmax)
    return 0


if __name__ == "__main__":
    sys.exit(main())
