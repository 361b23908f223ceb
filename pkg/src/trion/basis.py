"""Permutation-symmetrized combinations of the coupled oscillator basis.

The raw coupled basis knows nothing about particle exchange.  Physical
states of three identical particles must pick up a factor +1 (bosons) or
the permutation sign (spatially antisymmetric fermions) under every
relabeling.  This module projects the raw basis onto that subspace:
it accumulates the signed sum of all six permutation matrices, removes
the null space of its Gram matrix, and returns an orthonormal row basis
of surviving combinations.

The construction depends only on (L, parity, statistics, cutoff), never
on the oscillator width, so one symmetrized set serves every width and
every interaction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angular import RadialOrbital, clebsch_gordan, ho_radial, spherical_harmonic
from .labels import BasisLabel, enumerate_labels
from .permutations import PERMUTATIONS, expand_permutation, permutation_sign

_STATISTICS = ("bosons", "fermions")


@dataclass(frozen=True, eq=False)
class SymmetrizedBasisSet:
    """Orthonormal exchange-adapted combinations of coupled basis states.

    coeffs has shape (rank, len(labels)); its rows are raw-basis
    coefficient vectors of orthonormal symmetry-adapted functions, so
    coeffs @ coeffs.T is the identity.  rank == 0 means the requested
    (L, parity, statistics) block admits no state at this cutoff.
    """

    L: int
    parity: int
    statistics: str
    n_max: int
    labels: tuple[BasisLabel, ...]
    coeffs: np.ndarray
    threshold: float

    @property
    def rank(self) -> int:
        return self.coeffs.shape[0]

    @property
    def exists(self) -> bool:
        return self.rank > 0


def exchange_phase(perm: tuple[int, int, int], statistics: str) -> int:
    """Phase a physical state acquires under one relabeling."""
    if statistics not in _STATISTICS:
        raise ValueError(f"statistics must be one of {_STATISTICS}, got {statistics!r}")
    return permutation_sign(perm) if statistics == "fermions" else 1


def symmetrizer_matrix(
    labels: tuple[BasisLabel, ...], statistics: str, L: int, parity: int, n_max: int
) -> np.ndarray:
    """Signed sum of all six permutation matrices over the given labels.

    Accepts the block's labels in any order; internally the canonical
    enumeration order is permuted to match.
    """
    canonical = enumerate_labels(L, parity, n_max)
    if sorted(labels) != sorted(canonical):
        raise ValueError("labels must be exactly the (L, parity, n_max) block")
    order = np.array([canonical.index(lab) for lab in labels], dtype=int)
    total = np.zeros((len(labels), len(labels)))
    for perm in PERMUTATIONS:
        matrix = expand_permutation(perm, L, parity, n_max)
        total += exchange_phase(perm, statistics) * matrix
    return total[np.ix_(order, order)]


def symmetrize(
    labels: tuple[BasisLabel, ...],
    statistics: str,
    L: int,
    parity: int,
    n_max: int,
    threshold: float = 1e-8,
) -> SymmetrizedBasisSet:
    """Orthonormal exchange-adapted basis from one label block.

    Gram-matrix eigenvalues below threshold (relative to the largest)
    are treated as exact zeros; their directions are projected away.
    """
    summed = symmetrizer_matrix(labels, statistics, L, parity, n_max)
    gram = summed @ summed.T
    eigenvalues, vectors = np.linalg.eigh(gram)
    # The signed permutation sum satisfies summed @ summed.T = 6 * summed,
    # so genuine Gram eigenvalues equal 36 exactly; anything small is the
    # projected-away null space, even when the whole block is null.
    keep = eigenvalues > threshold * 36.0
    if not np.any(keep):
        coeffs = np.zeros((0, len(labels)))
    else:
        coeffs = (vectors[:, keep] / np.sqrt(eigenvalues[keep])).T @ summed
    return SymmetrizedBasisSet(L, parity, statistics, n_max, tuple(labels), coeffs, threshold)


_BASIS_CACHE: dict[tuple, SymmetrizedBasisSet] = {}


def symmetrized_basis(
    L: int, parity: int, statistics: str, n_max: int, threshold: float = 1e-8
) -> SymmetrizedBasisSet:
    """Cached exchange-adapted basis over the canonical label order."""
    key = (L, parity, statistics, n_max, threshold)
    hit = _BASIS_CACHE.get(key)
    if hit is None:
        labels = enumerate_labels(L, parity, n_max)
        hit = symmetrize(labels, statistics, L, parity, n_max, threshold)
        _BASIS_CACHE[key] = hit
    return hit


def coupled_value(
    label: BasisLabel,
    L: int,
    M: int,
    gamma: float,
    pair_vec: np.ndarray,
    spectator_vec: np.ndarray,
) -> complex | np.ndarray:
    """One coupled basis function at explicit Jacobi vectors.

    The pair coordinate r = x2 - x1 carries oscillator width gamma/2 and
    the spectator coordinate R = x3 - (x1 + x2)/2 width 2*gamma/3, which
    is the equal mass-weighted width the solver works in.
    """
    pair_vec = np.asarray(pair_vec, dtype=float)
    spectator_vec = np.asarray(spectator_vec, dtype=float)
    r = np.sqrt(np.sum(pair_vec * pair_vec, axis=0))
    s = np.sqrt(np.sum(spectator_vec * spectator_vec, axis=0))
    safe_r = np.where(r == 0.0, 1.0, r)
    safe_s = np.where(s == 0.0, 1.0, s)
    theta_r = np.arccos(np.clip(pair_vec[2] / safe_r, -1.0, 1.0))
    theta_s = np.arccos(np.clip(spectator_vec[2] / safe_s, -1.0, 1.0))
    phi_r = np.arctan2(pair_vec[1], pair_vec[0])
    phi_s = np.arctan2(spectator_vec[1], spectator_vec[0])
    radial = ho_radial(RadialOrbital(label.n_a, label.l_a, gamma / 2.0), r) * ho_radial(
        RadialOrbital(label.n_b, label.l_b, 2.0 * gamma / 3.0), s
    )
    angular = np.zeros(np.broadcast(r, s).shape, dtype=complex)
    for m_a in range(-label.l_a, label.l_a + 1):
        m_b = M - m_a
        if abs(m_b) > label.l_b:
            continue
        cg = clebsch_gordan(label.l_a, m_a, label.l_b, m_b, L, M)
        if cg == 0.0:
            continue
        angular += (
            cg
            * spherical_harmonic(label.l_a, m_a, theta_r, phi_r)
            * spherical_harmonic(label.l_b, m_b, theta_s, phi_s)
        )
    return radial * angular


__all__ = [
    "BasisLabel",
    "SymmetrizedBasisSet",
    "coupled_value",
    "enumerate_labels",
    "exchange_phase",
    "symmetrize",
    "symmetrized_basis",
    "symmetrizer_matrix",
]
