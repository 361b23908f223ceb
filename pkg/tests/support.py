"""Independent reference implementations used as oracles by the tests.

Everything here is built from scipy special functions and explicit
textbook formulas, deliberately avoiding the package's own evaluation
paths so a test failure points at the production code.
"""

from __future__ import annotations

import numpy as np
from scipy.special import eval_genlaguerre, gammaln, sph_harm_y

from trion.angular import clebsch_gordan


def reference_radial(n: int, l: int, width: float, r: np.ndarray) -> np.ndarray:
    """Normalized oscillator radial function from the Laguerre formula."""
    r = np.asarray(r, dtype=float)
    log_norm = 0.5 * (
        np.log(2.0)
        + 1.5 * np.log(width)
        + gammaln(n + 1)
        - gammaln(n + l + 1.5)
    )
    x = width * r * r
    return (
        np.exp(log_norm)
        * (np.sqrt(width) * r) ** l
        * np.exp(-0.5 * x)
        * eval_genlaguerre(n, l + 0.5, x)
    )


def vector_angles(vec: np.ndarray) -> tuple[float, float]:
    """(theta, phi) spherical angles of a 3-vector."""
    x, y, z = vec
    return float(np.arctan2(np.hypot(x, y), z)), float(np.arctan2(y, x))


def lab_amplitude(state, rvec, Rvec, M: int) -> complex:
    """Brute-force lab-frame wave function at one configuration.

    Sums the basis expansion term by term with scipy harmonics and the
    explicit Clebsch-Gordan coupling.  Slow but direct.
    """
    rvec = np.asarray(rvec, dtype=float)
    Rvec = np.asarray(Rvec, dtype=float)
    r = float(np.linalg.norm(rvec))
    R = float(np.linalg.norm(Rvec))
    theta_r, phi_r = vector_angles(rvec)
    theta_R, phi_R = vector_angles(Rvec)
    gamma = state.gamma
    total = 0.0 + 0.0j
    for label, c in zip(state.labels, state.coefficients):
        rad = reference_radial(label.n_a, label.l_a, gamma / 2.0, np.array(r)) * (
            reference_radial(label.n_b, label.l_b, 2.0 * gamma / 3.0, np.array(R))
        )
        ang = 0.0 + 0.0j
        for m_a in range(-label.l_a, label.l_a + 1):
            m_b = M - m_a
            if abs(m_b) > label.l_b:
                continue
            cg = clebsch_gordan(label.l_a, m_a, label.l_b, m_b, state.L, M)
            if cg == 0.0:
                continue
            ang += (
                cg
                * sph_harm_y(label.l_a, m_a, theta_r, phi_r)
                * sph_harm_y(label.l_b, m_b, theta_R, phi_R)
            )
        total += c * float(rad) * ang
    return complex(total)


def body_configuration(r: float, R: float, theta: float):
    """Jacobi vectors for the in-plane frame used by the analysis code.

    The spectator arm lies along y, the pair separation sits in the
    xy-plane at angle theta from it, so the plane normal is z.
    """
    rvec = np.array([r * np.sin(theta), r * np.cos(theta), 0.0])
    Rvec = np.array([0.0, R, 0.0])
    return rvec, Rvec
