"""Angular-momentum algebra and harmonic-oscillator single-coordinate kernels.

Everything downstream (basis construction, permutation brackets, observable
evaluation) leans on four primitives collected here:

* Clebsch-Gordan coefficients for integer angular momenta,
* spherical harmonics in the Condon-Shortley phase convention,
* radial oscillator eigenfunctions ``R_nl(r; w)`` for an arbitrary width
  parameter ``w`` (the Gaussian falls off as ``exp(-w r^2 / 2)``),
* closed-form matrix elements of the one-coordinate trap Hamiltonian and
  of ``r^2`` in that radial basis.

The radial convention fixes the wavefunction sign so that ``R_nl`` is
positive at small ``r``.  All matrix-element formulas below assume that
convention; tests cross-check them against quadrature with independently
generated Laguerre and Hermite polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MAX_L = 60
_LOG_FACT = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, 4 * _MAX_L + 3)))))


def log_factorial(n: int) -> float:
    """Natural log of n! for non-negative integers within the table range."""
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return float(_LOG_FACT[n])


@dataclass(frozen=True)
class AngularPair:
    """An (l, m) pair with the usual |m| <= l constraint enforced."""

    l: int
    m: int

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ValueError(f"negative angular momentum l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"projection m={self.m} exceeds l={self.l}")


@dataclass(frozen=True)
class RadialOrbital:
    """Quantum numbers and width of one radial oscillator eigenfunction.

    ``width`` is the inverse squared oscillator length: the orbital decays
    as ``exp(-width * r**2 / 2)`` and its energy in the generating trap is
    ``(2 n + l + 3/2)`` quanta.
    """

    n: int
    l: int
    width: float = 1.0

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise ValueError(f"negative quantum number in (n={self.n}, l={self.l})")
        if self.width <= 0.0:
            raise ValueError(f"width must be positive, got {self.width}")


def clebsch_gordan(l1: int, m1: int, l2: int, m2: int, L: int, M: int) -> float:
    """Clebsch-Gordan coefficient <l1 m1 l2 m2 | L M> for integer momenta.

    Returns 0.0 whenever the triangle rule or projection constraints fail,
    so callers can sum over ranges without guarding.
    """
    if m1 + m2 != M:
        return 0.0
    if abs(m1) > l1 or abs(m2) > l2 or abs(M) > L:
        return 0.0
    if L < abs(l1 - l2) or L > l1 + l2:
        return 0.0

    # Racah's single-sum form, evaluated with log-factorials.
    log_pref = 0.5 * (
        math.log(2 * L + 1)
        + log_factorial(l1 + l2 - L)
        + log_factorial(l1 - l2 + L)
        + log_factorial(-l1 + l2 + L)
        - log_factorial(l1 + l2 + L + 1)
        + log_factorial(l1 + m1)
        + log_factorial(l1 - m1)
        + log_factorial(l2 + m2)
        + log_factorial(l2 - m2)
        + log_factorial(L + M)
        + log_factorial(L - M)
    )

    k_min = max(0, l2 - L - m1, l1 - L + m2)
    k_max = min(l1 + l2 - L, l1 - m1, l2 + m2)
    total = 0.0
    for k in range(k_min, k_max + 1):
        log_den = (
            log_factorial(k)
            + log_factorial(l1 + l2 - L - k)
            + log_factorial(l1 - m1 - k)
            + log_factorial(l2 + m2 - k)
            + log_factorial(L - l2 + m1 + k)
            + log_factorial(L - l1 - m2 + k)
        )
        total += (-1.0) ** k * math.exp(log_pref - log_den)
    return total


def _legendre_table(l_max: int, x: np.ndarray) -> dict[tuple[int, int], np.ndarray]:
    """Fully normalized associated Legendre functions for 0 <= m <= l <= l_max.

    Normalized so that Y_lm(theta, phi) = table[(l, m)] * exp(i m phi) with
    the Condon-Shortley sign absorbed into the m-stepping recurrence.
    """
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    table: dict[tuple[int, int], np.ndarray] = {}
    pmm = np.full_like(x, math.sqrt(0.25 / math.pi))
    for m in range(l_max + 1):
        table[(m, m)] = pmm
        if m + 1 <= l_max:
            table[(m + 1, m)] = x * math.sqrt(2 * m + 3) * pmm
        for l in range(m + 2, l_max + 1):
            a = math.sqrt((4 * l * l - 1.0) / (l * l - m * m))
            b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            table[(l, m)] = a * (x * table[(l - 1, m)] - b * table[(l - 2, m)])
        if m + 1 <= l_max:
            pmm = -math.sqrt((2 * m + 3.0) / (2 * m + 2.0)) * s * pmm
    return table


def spherical_harmonic_all(
    l_max: int, theta: np.ndarray, phi: np.ndarray
) -> dict[tuple[int, int], np.ndarray]:
    """All Y_lm for l <= l_max on a common (broadcastable) angle grid."""
    if l_max > _MAX_L:
        raise ValueError(f"l_max={l_max} beyond supported range {_MAX_L}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    legendre = _legendre_table(l_max, np.cos(theta))
    out: dict[tuple[int, int], np.ndarray] = {}
    for m in range(l_max + 1):
        phase = np.exp(1j * m * phi)
        for l in range(m, l_max + 1):
            y = legendre[(l, m)] * phase
            out[(l, m)] = y
            if m > 0:
                out[(l, -m)] = (-1.0) ** m * np.conj(y)
    return out


def spherical_harmonic(l: int, m: int, theta, phi) -> np.ndarray:
    """Single spherical harmonic Y_lm(theta, phi), Condon-Shortley phase."""
    if l < 0 or l > _MAX_L:
        raise ValueError(f"l={l} outside supported range 0..{_MAX_L}")
    if abs(m) > l:
        raise ValueError(f"|m|={abs(m)} exceeds l={l}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    table = _legendre_table(l, np.cos(theta))
    y = table[(l, abs(m))] * np.exp(1j * abs(m) * phi)
    if m < 0:
        y = (-1.0) ** (-m) * np.conj(y)
    return y


def _laguerre_batch(n_max: int, alpha: float, x: np.ndarray) -> np.ndarray:
    """Generalized Laguerre polynomials L_n^alpha(x) for n = 0..n_max."""
    out = np.empty((n_max + 1,) + x.shape, dtype=float)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 + alpha - x
    for n in range(2, n_max + 1):
        out[n] = ((2 * n - 1 + alpha - x) * out[n - 1] - (n - 1 + alpha) * out[n - 2]) / n
    return out


def ho_radial_batch(n_max: int, l: int, width: float, r) -> np.ndarray:
    """Radial oscillator functions R_nl(r; width) for all n = 0..n_max.

    Output shape is (n_max + 1,) + r.shape.  Normalized so that
    integral of R^2 r^2 dr equals one; positive at the origin.
    """
    if width <= 0.0:
        raise ValueError(f"width must be positive, got {width}")
    r = np.asarray(r, dtype=float)
    x = width * r * r
    lag = _laguerre_batch(n_max, l + 0.5, x)
    envelope = np.exp(-0.5 * x) * (np.sqrt(width) * r) ** l
    norms = np.exp(
        0.5
        * (
            math.log(2.0)
            + 1.5 * math.log(width)
            + np.array([math.lgamma(n + 1) - math.lgamma(n + l + 1.5) for n in range(n_max + 1)])
        )
    )
    return norms[(...,) + (None,) * r.ndim] * lag * envelope


def ho_radial(orbital: RadialOrbital, r) -> np.ndarray:
    """Radial oscillator eigenfunction for a single orbital."""
    return ho_radial_batch(orbital.n, orbital.l, orbital.width, np.asarray(r, dtype=float))[-1]


def ho_onebody_matrix(n_max: int, l: int, gamma: float) -> np.ndarray:
    """Matrix of one trap-Hamiltonian coordinate term in a scaled basis.

    The operator is h = -(1/2 mu) laplacian + (mu/2) x^2 and the basis is
    the oscillator set whose width is ``gamma`` times the natural width
    ``mu`` of that operator.  The reduced mass drops out; only the scale
    mismatch ``gamma`` survives.  The result is symmetric tridiagonal:

        diag(n)     = (gamma + 1/gamma)/2 * (2 n + l + 3/2)
        offdiag(n)  = (gamma - 1/gamma)/2 * sqrt((n+1)(n + l + 3/2))

    At gamma = 1 this collapses to the exact spectrum 2n + l + 3/2.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    n = np.arange(n_max + 1, dtype=float)
    h = np.zeros((n_max + 1, n_max + 1))
    h[np.diag_indices(n_max + 1)] = 0.5 * (gamma + 1.0 / gamma) * (2 * n + l + 1.5)
    off = 0.5 * (gamma - 1.0 / gamma) * np.sqrt((n[:-1] + 1) * (n[:-1] + l + 1.5))
    h[np.arange(n_max), np.arange(1, n_max + 1)] = off
    h[np.arange(1, n_max + 1), np.arange(n_max)] = off
    return h


def ho_r2_element(n1: int, n2: int, l: int, width: float) -> float:
    """Matrix element <n1 l| r^2 |n2 l> between equal-width radial orbitals."""
    if width <= 0.0:
        raise ValueError(f"width must be positive, got {width}")
    if n1 == n2:
        return (2 * n1 + l + 1.5) / width
    n = min(n1, n2)
    if abs(n1 - n2) == 1:
        return -math.sqrt((n + 1) * (n + l + 1.5)) / width
    return 0.0
