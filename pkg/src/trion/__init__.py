"""Three identical particles in a harmonic trap: spectra and structure.

The package diagonalizes the internal Hamiltonian of three identical
bosons or fermions held in an isotropic harmonic trap and interacting
through a pairwise central potential.  The working basis is a set of
coupled two-oscillator product states in Jacobi coordinates, projected
onto the proper permutation symmetry.  On top of the spectrum the
package computes rms sizes, body-frame component weights, one-body
densities, shape densities at fixed hyperradius, and the symmetry-rule
classification of each (L, parity) series.

All energies are in units of the trap quantum and all lengths in trap
oscillator lengths.
"""

from .angular import (
    AngularPair,
    RadialOrbital,
    clebsch_gordan,
    ho_onebody_matrix,
    ho_r2_element,
    ho_radial,
    spherical_harmonic,
)
from .basis import SymmetrizedBasisSet, symmetrize, symmetrized_basis
from .config import RunConfig, canonical_json, config_hash
from .errors import NonexistentSeriesError, QuadratureError
from .labels import BasisLabel, enumerate_labels
from .observables import (
    OneBodyDensity,
    WeightVector,
    body_frame_amplitudes,
    density_peak_angle,
    mean_square_hyperradius,
    one_body_density,
    q_weights,
    rms_radius,
)
from .potentials import (
    InteractionModel,
    from_name,
    from_table,
    interaction_a,
    interaction_b,
    interaction_c,
    load_table,
    radial_matrix_elements,
)
from .shapes import (
    GeometryCurves,
    ShapeGrid,
    geometry_curves,
    ist_apex_angle,
    ist_branches,
    ist_peak_ratio,
    shape_density,
    special_points,
)
from .solver import (
    Eigenstate,
    SeriesSolution,
    SpectrumTable,
    convergence_scan,
    optimize_gamma,
    solve_series,
    spectrum,
)
from .symmetry import StateSymmetryProfile, classify, classify_all, rule1_allowed_q

__version__ = "0.1.0"

__all__ = [
    "AngularPair",
    "BasisLabel",
    "Eigenstate",
    "GeometryCurves",
    "InteractionModel",
    "NonexistentSeriesError",
    "OneBodyDensity",
    "QuadratureError",
    "RadialOrbital",
    "RunConfig",
    "SeriesSolution",
    "ShapeGrid",
    "SpectrumTable",
    "StateSymmetryProfile",
    "SymmetrizedBasisSet",
    "WeightVector",
    "body_frame_amplitudes",
    "canonical_json",
    "classify",
    "classify_all",
    "clebsch_gordan",
    "config_hash",
    "convergence_scan",
    "density_peak_angle",
    "enumerate_labels",
    "from_name",
    "from_table",
    "geometry_curves",
    "ho_onebody_matrix",
    "ho_r2_element",
    "ho_radial",
    "interaction_a",
    "interaction_b",
    "interaction_c",
    "ist_apex_angle",
    "ist_branches",
    "ist_peak_ratio",
    "load_table",
    "mean_square_hyperradius",
    "one_body_density",
    "optimize_gamma",
    "q_weights",
    "radial_matrix_elements",
    "rms_radius",
    "shape_density",
    "solve_series",
    "special_points",
    "spectrum",
    "spherical_harmonic",
    "symmetrize",
    "symmetrized_basis",
]
