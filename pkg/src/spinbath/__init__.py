"""Exact non-Markovian dynamics of two coupled qubits in a collective spin bath.

Two exchange-coupled qubits with a z-axis antisymmetric (DM) interaction and
a local magnetic field exchange excitations with a thermal bath that reduces,
for a large number of bath spins, to a single collective bosonic mode.  The
package propagates the reduced two-qubit density matrix exactly, computes
concurrence and quantum discord along the way, and ships brute-force
reference evolutions (full joint Hilbert space, finite bath sizes) that
every analytic step is checked against.
"""

from .assembly import (ThermalWeights, density_series, reduced_density,
                       thermal_weights, validate_density_matrix,
                       x_block_asymmetry)
from .correlations import (CorrelationRecord, DiscordResult,
                           MeasurementParams, X_AXIS_MEASUREMENT,
                           concurrence_wootters, concurrence_x_state,
                           conditional_ensemble, conditional_entropy,
                           correlation_record, density_eigenvalues,
                           minimize_conditional_entropy, mutual_information,
                           quantum_discord)
from .model import (InitialState, InvariantViolation, ModelParams,
                    PropagationError, TruncationConfig, choose_truncation,
                    tail_weight)
from .oracle import (bosonic_hamiltonian, bosonic_series,
                     direct_evolution_bosonic, evolve_state,
                     finite_n_full_thermal, finite_n_spin_bath,
                     system_hamiltonian)
from .propagator import (CoefficientSet, Generator4, Variant,
                         build_generator_plain, build_generator_tilde,
                         coefficient_norm, coefficient_series,
                         evolve_coefficients, initial_vector, norm_weights,
                         phase_factor)

__version__ = "0.1.0"

__all__ = [
    "CoefficientSet", "CorrelationRecord", "DiscordResult", "Generator4",
    "InitialState", "InvariantViolation", "MeasurementParams", "ModelParams",
    "PropagationError", "ThermalWeights", "TruncationConfig", "Variant",
    "X_AXIS_MEASUREMENT", "bosonic_hamiltonian", "bosonic_series",
    "build_generator_plain", "build_generator_tilde", "choose_truncation",
    "coefficient_norm", "coefficient_series", "concurrence_wootters",
    "concurrence_x_state", "conditional_ensemble", "conditional_entropy",
    "correlation_record", "density_eigenvalues", "density_series",
    "direct_evolution_bosonic", "evolve_coefficients", "evolve_state",
    "finite_n_full_thermal", "finite_n_spin_bath", "initial_vector",
    "minimize_conditional_entropy", "mutual_information", "norm_weights",
    "phase_factor", "quantum_discord", "reduced_density", "system_hamiltonian",
    "tail_weight", "thermal_weights", "validate_density_matrix",
    "x_block_asymmetry",
]
