"""Reduced two-qubit density matrix from thermally weighted branch amplitudes.

The bath starts in the thermal state of the collective mode, a geometric
Boltzmann distribution over occupations with partition function
Z = 1 / (1 - exp(-2 g0 / T)).  Tracing the bath out of the evolved joint
state leaves an X-form matrix in the basis |00>, |01>, |10>, |11>: only the
diagonal and the antidiagonal are populated, because the dynamics conserves
the total excitation number and the initial state carries coherence only
between |00> and |11>.

Entry by entry (w_n = exp(-2 n g0 / T) / Z, plain amplitudes from the |00>
branch, tilde amplitudes from the |11> branch, both evaluated at the initial
occupation n):

  rho11 = sum_n w_n ( |alpha|^2 |A1|^2 + |beta|^2 (n+1)(n+2) |tA1|^2 )
  rho22 = sum_n w_n ( |alpha|^2 n |B1|^2 + |beta|^2 (n+1) |tB1|^2 )
  rho33 =      same with C1, tC1
  rho23 = sum_n w_n ( |alpha|^2 n B1 conj(C1) + |beta|^2 (n+1) tB1 conj(tC1) )
  rho44 = sum_n w_n ( |alpha|^2 n(n-1) |D1|^2 + |beta|^2 |tD1|^2 )
  rho14 = exp(4i g0 t) alpha conj(beta) sum_n w_n A1 conj(tD1)

The phase on rho14 is the relative global phase of the two branches and is
independent of n.  Note that for d_z != 0 the one-excitation block is not
symmetric: rho22 != rho33 and rho23 is complex, because the antisymmetric
exchange distinguishes the two single-flip states.  Every entry here agrees
with brute-force evolution of the joint Hamiltonian (see the oracle module
and the test suite), which is the defining check for this assembly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (InitialState, InvariantViolation, ModelParams,
                    TruncationConfig, tail_weight)
from .propagator import (Variant, build_generator_plain, build_generator_tilde,
                         coefficient_series)

_X_ZERO_PATTERN = [(0, 1), (0, 2), (1, 3), (2, 3)]


@dataclass(frozen=True)
class ThermalWeights:
    """Normalized Boltzmann weights of the bath occupations up to n_max."""

    weights: np.ndarray
    partition: float


def thermal_weights(params: ModelParams, trunc: TruncationConfig) -> ThermalWeights:
    """Geometric occupation weights exp(-2 n g0 / T) / Z for n <= n_max.

    Z is the closed-form geometric partition function, so the truncated
    weights sum to 1 minus the neglected tail.
    """
    if params.g_bath <= 0:
        raise InvariantViolation("g_bath must be > 0")
    ratio = np.exp(-2.0 * params.g_bath / params.temperature)
    partition = 1.0 / (1.0 - ratio)
    n = np.arange(trunc.n_max + 1)
    weights = ratio ** n / partition
    return ThermalWeights(weights=weights, partition=float(partition))


def density_series(params: ModelParams, state0: InitialState, times,
                   trunc: TruncationConfig, validate: bool = True) -> np.ndarray:
    """Reduced density matrices at each time, shaped (len(times), 4, 4)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    w = thermal_weights(params, trunc).weights
    aa = abs(state0.alpha) ** 2
    bb = abs(state0.beta) ** 2
    ab = state0.alpha * np.conj(state0.beta)

    nt = len(times)
    r11 = np.zeros(nt)
    r22 = np.zeros(nt)
    r33 = np.zeros(nt)
    r44 = np.zeros(nt)
    r23 = np.zeros(nt, dtype=complex)
    r14 = np.zeros(nt, dtype=complex)

    for n in range(trunc.n_max + 1):
        plain = coefficient_series(build_generator_plain(params, n), times).T
        tilde = coefficient_series(build_generator_tilde(params, n), times).T
        r11 += w[n] * (aa * np.abs(plain[0]) ** 2
                       + bb * (n + 1) * (n + 2) * np.abs(tilde[0]) ** 2)
        r22 += w[n] * (aa * n * np.abs(plain[1]) ** 2
                       + bb * (n + 1) * np.abs(tilde[1]) ** 2)
        r33 += w[n] * (aa * n * np.abs(plain[2]) ** 2
                       + bb * (n + 1) * np.abs(tilde[2]) ** 2)
        r23 += w[n] * (aa * n * plain[1] * np.conj(plain[2])
                       + bb * (n + 1) * tilde[1] * np.conj(tilde[2]))
        r44 += w[n] * (aa * n * (n - 1) * np.abs(plain[3]) ** 2
                       + bb * np.abs(tilde[3]) ** 2)
        r14 += w[n] * ab * plain[0] * np.conj(tilde[3])
    r14 *= np.exp(4j * params.g_bath * times)

    out = np.zeros((nt, 4, 4), dtype=complex)
    out[:, 0, 0] = r11
    out[:, 1, 1] = r22
    out[:, 2, 2] = r33
    out[:, 3, 3] = r44
    out[:, 1, 2] = r23
    out[:, 2, 1] = np.conj(r23)
    out[:, 0, 3] = r14
    out[:, 3, 0] = np.conj(r14)

    if validate:
        trace_tol = tail_weight(params, trunc.n_max) + 1e-10
        for i in range(nt):
            validate_density_matrix(out[i], trace_tol=trace_tol)
    return out


def reduced_density(params: ModelParams, state0: InitialState, t: float,
                    trunc: TruncationConfig) -> np.ndarray:
    """Reduced two-qubit density matrix at a single time."""
    return density_series(params, state0, [t], trunc)[0]


def validate_density_matrix(rho: np.ndarray, trace_tol: float = 1e-10,
                            herm_tol: float = 1e-10, psd_tol: float = 1e-10,
                            x_tol: float = 1e-12) -> None:
    """Check hermiticity, trace, positivity and the X zero pattern.

    The truncated thermal sum is deliberately not renormalized, so callers
    working at loose truncation tolerances should widen trace_tol by the
    known tail weight.  Raises InvariantViolation on the first failure.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise InvariantViolation(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > herm_tol:
        raise InvariantViolation(f"hermiticity defect {herm:.3e} > {herm_tol:.0e}")
    trace_defect = abs(float(np.trace(rho).real) - 1.0)
    if trace_defect > trace_tol:
        raise InvariantViolation(f"trace defect {trace_defect:.3e} > {trace_tol:.3e}")
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if min_eig < -psd_tol:
        raise InvariantViolation(f"negative eigenvalue {min_eig:.3e} < -{psd_tol:.0e}")
    off = max(abs(rho[i, j]) for i, j in _X_ZERO_PATTERN)
    if off > x_tol:
        raise InvariantViolation(f"X zero-pattern violated by {off:.3e} > {x_tol:.0e}")


def x_block_asymmetry(rho: np.ndarray) -> float:
    """Deviation of the one-excitation block from the symmetric form.

    Returns max(|rho22 - rho33|, |Im rho23|).  Zero only when the two
    single-flip populations coincide and their coherence is real, which
    holds for d_z = 0 but not in general; exposed as a diagnostic rather
    than enforced as an invariant.
    """
    rho = np.asarray(rho)
    return float(max(abs(rho[1, 1].real - rho[2, 2].real), abs(rho[1, 2].imag)))
