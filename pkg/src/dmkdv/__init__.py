"""Numerical laboratory for the discrete defocusing mKdV lattice.

Building blocks:

* ``lattice``    -- the ODE system and its RK4 integrator
* ``scattering`` -- Jost solutions and a(z), b(z), r(z) on |z| = 1
* ``phase``      -- phase function, stationary points, scaling factors
* ``weights``    -- scalar-problem function delta and arc-integral
                    coefficients (nu_j, chi_j, hat_delta_j, delta_j^0)
* ``model``      -- Gamma-function cross entries and the leading-order
                    asymptotic value of q_n
* ``harness``    -- end-to-end sweeps, self-test, emitters, used by the
                    ``dmkdv`` command-line tool
"""

from .errors import (
    BlowupError,
    ConfigError,
    ConventionError,
    DmkdvError,
    DomainError,
    MergingPointsError,
    PoleError,
    QuadratureError,
    ReflectionTooLargeError,
    SingularStepError,
    SpillError,
)
from .harness import ComparisonRecord, RunConfig, emit, run_compare, selftest
from .lattice import (
    InitialProfile,
    LatticeState,
    conserved_c_inf,
    integrate,
    rho_zero,
    rhs,
    staggered,
    weighted_norm,
)
from .model import (
    DEFAULT_SIGN_CONVENTION,
    SIGN_CONVENTIONS,
    AsymptoticResult,
    CrossSolution,
    amplitude_envelope,
    complex_gamma,
    cross_solutions,
    leading_term,
    m1_entry,
    oscillation_decomposition,
)
from .phase import (
    RayParams,
    StationarySet,
    phase_at,
    phase_derivative,
    phase_second_derivative,
    scaling_factor,
    stationary_points,
)
from .scattering import (
    JostPair,
    ReflectionGrid,
    ScatteringData,
    UnitCirclePoint,
    jost_minus,
    jost_pair,
    jost_plus,
    reduced_potential,
    reflection_evaluator,
    reflection_grid,
    scattering_coefficients,
)
from .weights import (
    ArcSpec,
    CoefficientSet,
    cauchy_arc_integral,
    chi_at_stationary,
    coefficient_set,
    delta_at,
    delta_j0,
    delta_j_at,
    hat_delta_at_stationary,
    log_density,
    nu_at,
)

__version__ = "0.1.0"
