"""Physical parameters and shared configuration.

Units: k_B = hbar = 1. Energies are measured in the same units as the
magnetic field strength; temperature enters only through Boltzmann
factors exp(-E/T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InvariantViolation(ValueError):
    """A physical invariant (normalization, positivity, ...) is broken."""


class PropagationError(RuntimeError):
    """Numerical time evolution lost unitarity beyond tolerance."""


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvariantViolation(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Couplings and temperature of the full system + bath Hamiltonian.

    epsilon      magnetic field along z, acting on both central qubits
    j_coupling   in-plane exchange J between the two qubits
                 (J > 0 antiferromagnetic, J < 0 ferromagnetic)
    j_z          Ising (z-axis) exchange anisotropy
    d_z          z component of the antisymmetric (DM) exchange vector
    g_bath       coupling among the bath spins (sets the 2*g_bath level
                 spacing of the collective bosonic mode); must be > 0
                 or the bath thermal state is not normalizable
    g_sys_bath   coupling between the central qubits and the bath
    temperature  bath temperature, > 0
    """

    epsilon: float
    j_coupling: float
    j_z: float
    d_z: float
    g_bath: float
    g_sys_bath: float
    temperature: float

    def __post_init__(self):
        for name in ("epsilon", "j_coupling", "j_z", "d_z",
                     "g_bath", "g_sys_bath", "temperature"):
            value = float(getattr(self, name))
            _require_finite(name, value)
            object.__setattr__(self, name, value)
        if self.temperature <= 0:
            raise InvariantViolation(
                f"temperature must be > 0, got {self.temperature}")
        if self.g_bath <= 0:
            raise InvariantViolation(
                f"g_bath must be > 0, got {self.g_bath}")


@dataclass(frozen=True)
class InitialState:
    """Pure two-qubit initial state alpha|00> + beta|11>."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        beta = complex(self.beta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        norm = abs(alpha) ** 2 + abs(beta) ** 2
        if not math.isfinite(norm) or abs(norm - 1.0) > 1e-12:
            raise InvariantViolation(
                f"|alpha|^2 + |beta|^2 must equal 1 within 1e-12, got {norm}")

    @classmethod
    def bell_like(cls) -> "InitialState":
        """Equal-weight superposition (|00> + |11>)/sqrt(2)."""
        s = 1.0 / math.sqrt(2.0)
        return cls(s, s)


@dataclass(frozen=True)
class TruncationConfig:
    """Finite cutoff n_max on the bath occupation sums.

    The neglected thermal weight is exp(-2 (n_max + 1) g_bath / T), the
    geometric tail of the Boltzmann distribution.
    """

    n_max: int
    tail_tolerance: float

    def __post_init__(self):
        if self.n_max < 0:
            raise InvariantViolation(f"n_max must be >= 0, got {self.n_max}")
        if not 0.0 < self.tail_tolerance < 1.0:
            raise InvariantViolation(
                f"tail_tolerance must lie in (0, 1), got {self.tail_tolerance}")


def tail_weight(params: ModelParams, n_max: int) -> float:
    """Thermal weight of all bath occupations above n_max."""
    return math.exp(-2.0 * (n_max + 1) * params.g_bath / params.temperature)


# Sums over the doubly-lowered branch start contributing at occupation 2,
# so never truncate below that.
_N_MAX_FLOOR = 2


def choose_truncation(params: ModelParams, tol: float) -> TruncationConfig:
    """Smallest n_max whose neglected tail weight is at most tol.

    Returns at least n_max = 2. Raises for invalid params or tol outside
    (0, 1).
    """
    if not 0.0 < tol < 1.0:
        raise InvariantViolation(f"tol must lie in (0, 1), got {tol}")
    if params.temperature <= 0 or params.g_bath <= 0:
        raise InvariantViolation("temperature and g_bath must be positive")
    # exp(-2 (n+1) g0 / T) <= tol  <=>  n >= -T ln(tol) / (2 g0) - 1
    exact = -params.temperature * math.log(tol) / (2.0 * params.g_bath) - 1.0
    n_max = max(_N_MAX_FLOOR, math.ceil(exact))
    # Guard against ceil landing one short through rounding.
    while tail_weight(params, n_max) > tol:
        n_max += 1
    return TruncationConfig(n_max=n_max, tail_tolerance=tol)
