"""qstirling: thermal uncertainty relations and the quantum Stirling cycle
for a particle in a 1-D infinite well.

The package covers the well's exact single-particle physics, canonical
ensemble quantities, lower/upper bounds on the position-momentum variance
sum, the uncertainty-to-thermodynamics bridge (partition function, free
energy, entropy), and the four-stage Stirling cycle with work, heats and
efficiency. A CLI (``qstirling``) drives parameter sweeps.
"""
from .constants import ELECTRON_MASS, HBAR, K_B, NM
from .errors import (
    ConvergenceError,
    DegenerateCycleError,
    DegenerateStateError,
    DomainError,
    QStirlingError,
    RegimeError,
    TruncationError,
)
from .numerics import SeriesResult, central_difference, erf, erfc, integrate, sum_series
from .well import (
    EigenMoments,
    WellGeometry,
    doubled_well_energy,
    eigenstate_moments,
    eigenstate_product_uncertainty,
    energy_level,
    momentum_matrix_coefficient,
    momentum_operator,
    position_matrix_element,
    position_operator,
    reduced_geometry,
    wavefunction_value,
)
from .thermal import (
    RegimeWarning,
    ThermalEnvironment,
    UncertaintyPair,
    alpha_beta,
    eigenstate_uncertainty,
    mean_energy,
    mean_quantum_number,
    mean_square_quantum_number,
    partition_function,
    reduced_environment,
    thermal_uncertainty,
    thermal_uncertainty_series,
    thermal_variance_p,
    thermal_variance_x,
)
from .bounds import (
    BoundsReport,
    StateVector,
    TruncatedOperator,
    basis_state,
    covariance,
    dw_upper_bound,
    eigenstate_sum_variance_bounds,
    mp_lower_bound,
    thermal_sum_variance_bounds,
    variance,
)
from .bridge import (
    BridgeConstants,
    bridge_constants,
    bridge_d_coefficient,
    c_t_constant,
    entropy,
    entropy_oracle,
    helmholtz_free_energy,
    partition_from_uncertainty,
)
from .engine import (
    CycleConfig,
    CycleResult,
    EfficiencyBoundsRow,
    carnot_limit,
    cycle_efficiency,
    cycle_work,
    cycle_work_uncertainty_literal,
    efficiency_bounds_curve,
    heat_exchanges,
    run_cycle,
    stage_internal_energies,
    stage_partition_functions,
)
from .sweep import SweepSpec, preset_defaults, run_sweep, write_output

__version__ = "0.1.0"
