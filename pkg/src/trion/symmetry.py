"""Selection rules for body-frame components and accessible shapes.

The body frame used throughout puts the three-particle plane in the xy
plane (z along the plane normal) with the spectator Jacobi vector along
y.  Q labels the angular momentum projection on the plane normal.  Three
exact statements follow from reflection, cyclic relabeling at the
equilateral shape, and pair relabeling on the isosceles line:

  1. reflection through the particle plane forces (-1)^Q to equal the
     parity, so components with the wrong Q parity vanish identically;
  2. an equilateral configuration is invariant under a cyclic relabeling
     combined with a 120 degree rotation about the normal, so only
     Q = 0, 3, 6, ... survive there;
  3. on the isosceles line (pair orthogonal to the spectator vector) the
     Q = 0 component picks up the factor sign * parity * (-1)^L under
     pair relabeling and vanishes unless that factor is +1.

Collinear configurations are axially symmetric about an in-plane axis,
which confines the amplitude to components with Q = L mod 2; combined
with rule 1 they are reachable only when (-1)^L equals the parity.

States fall into three families: equilateral-accessible (group 1),
isosceles-only (group 2), and neither (group 3).
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import symmetrized_basis

_EXCHANGE_SIGN = {"bosons": 1, "fermions": -1}


def exchange_sign(statistics: str) -> int:
    """Sign of the spatial wave function under one pair transposition."""
    try:
        return _EXCHANGE_SIGN[statistics]
    except KeyError:
        raise ValueError(f"unknown statistics {statistics!r}") from None


def rule1_allowed_q(L: int, parity: int) -> tuple[int, ...]:
    """Non-negative Q with nonvanishing weight: (-1)^Q = parity, Q <= L."""
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 or -1, got {parity}")
    return tuple(q for q in range(L + 1) if (-1) ** q == parity)


def ist_q0_allowed(L: int, parity: int, statistics: str) -> bool:
    """Whether the Q = 0 component survives on the isosceles line."""
    return exchange_sign(statistics) * parity * (-1) ** L == 1


def rt_accessible(L: int, parity: int, statistics: str) -> bool:
    """Whether the equilateral shape carries any amplitude."""
    for q in rule1_allowed_q(L, parity):
        if q % 3 != 0:
            continue
        if q == 0 and not ist_q0_allowed(L, parity, statistics):
            continue
        return True
    return False


def ist_accessible(L: int, parity: int, statistics: str) -> bool:
    """Whether isosceles shapes (apex particle) carry any amplitude."""
    allowed = rule1_allowed_q(L, parity)
    if any(q != 0 for q in allowed):
        return True
    return 0 in allowed and ist_q0_allowed(L, parity, statistics)


def col_accessible(L: int, parity: int) -> bool:
    """Whether collinear shapes carry any amplitude."""
    return (-1) ** L == parity


@dataclass(frozen=True)
class StateSymmetryProfile:
    """Shape-access classification of one (L, parity, statistics) series."""

    L: int
    parity: int
    statistics: str
    exists: bool
    allowed_q: tuple[int, ...]
    rt_accessible: bool
    ist_accessible: bool
    col_accessible: bool
    group: int | None

    @property
    def term(self) -> str:
        return f"{self.L}{'+' if self.parity > 0 else '-'}"


def classify(
    L: int,
    parity: int,
    statistics: str,
    n_max: int = 20,
    threshold: float = 1e-8,
) -> StateSymmetryProfile:
    """Symmetry profile of one series; existence checked at n_max."""
    exists = symmetrized_basis(L, parity, statistics, n_max, threshold).exists
    rt = rt_accessible(L, parity, statistics)
    ist = ist_accessible(L, parity, statistics)
    if not exists:
        group = None
    elif rt:
        group = 1
    elif ist:
        group = 2
    else:
        group = 3
    return StateSymmetryProfile(
        L,
        parity,
        statistics,
        exists,
        rule1_allowed_q(L, parity),
        rt,
        ist,
        col_accessible(L, parity),
        group,
    )


def classify_all(
    statistics: str,
    l_max: int = 4,
    n_max: int = 20,
    threshold: float = 1e-8,
) -> tuple[StateSymmetryProfile, ...]:
    """Profiles for every series with L <= l_max, both parities."""
    return tuple(
        classify(L, parity, statistics, n_max, threshold)
        for L in range(l_max + 1)
        for parity in (1, -1)
    )
