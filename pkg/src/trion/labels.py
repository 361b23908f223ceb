"""Quantum-number bookkeeping for the coupled two-oscillator basis.

A basis function carries radial and orbital quantum numbers for each of
the two internal Jacobi coordinates, coupled to total angular momentum L.
The pair (n_a, l_a) belongs to the pair-separation coordinate and
(n_b, l_b) to the spectator coordinate.  Total oscillator quanta
``N_ab = 2(n_a + n_b) + l_a + l_b`` fix both the energy shell and,
through (-1)**(l_a + l_b), the parity.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class BasisLabel:
    """Quantum numbers of one coupled product state at fixed (L, parity)."""

    n_a: int
    l_a: int
    n_b: int
    l_b: int

    def __post_init__(self) -> None:
        for name in ("n_a", "l_a", "n_b", "l_b"):
            if getattr(self, name) < 0:
                raise ValueError(f"negative quantum number {name} in {self}")

    @property
    def shell(self) -> int:
        """Total oscillator quanta 2(n_a + n_b) + l_a + l_b."""
        return 2 * (self.n_a + self.n_b) + self.l_a + self.l_b

    @property
    def parity(self) -> int:
        return -1 if (self.l_a + self.l_b) % 2 else 1


def enumerate_labels(L: int, parity: int, n_max: int) -> tuple[BasisLabel, ...]:
    """All coupled labels with N_ab <= n_max in a fixed (L, parity) block.

    Ordered by shell, then (l_a, l_b, n_a); the ordering is part of the
    contract because permutation-bracket tables are indexed by position.
    """
    if parity not in (-1, 1):
        raise ValueError(f"parity must be +1 or -1, got {parity}")
    if L < 0 or n_max < 0:
        raise ValueError(f"L={L} and n_max={n_max} must be non-negative")
    out: list[BasisLabel] = []
    for shell in range(n_max + 1):
        if (-1) ** shell != parity:
            continue
        for l_a in range(shell + 1):
            for l_b in range(abs(L - l_a), min(L + l_a, shell - l_a) + 1):
                if (l_a + l_b) % 2 != shell % 2:
                    continue
                pairs = (shell - l_a - l_b) // 2
                for n_a in range(pairs + 1):
                    out.append(BasisLabel(n_a, l_a, pairs - n_a, l_b))
    return tuple(out)
