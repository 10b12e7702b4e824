"""Shared helpers for the test suite.

The brute-force constructions here (projective measurement ensembles,
random X states) deliberately avoid the closed-form code paths they are
used to check.
"""

import numpy as np
import pytest

from spinbath import InitialState, ModelParams

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def fig_params(d_z: float = 2.0, temperature: float = 2.0,
               g_sys_bath: float = 1.0, j_z: float = 1.0,
               j_coupling: float = 2.0) -> ModelParams:
    """The antiferromagnetic reference parameter point used throughout."""
    return ModelParams(epsilon=0.5, j_coupling=j_coupling, j_z=j_z, d_z=d_z,
                       g_bath=1.0, g_sys_bath=g_sys_bath,
                       temperature=temperature)


@pytest.fixture
def bell_state() -> InitialState:
    return InitialState.bell_like()


def random_x_state(rng: np.random.Generator) -> np.ndarray:
    """Random valid X-form density matrix (2x2-block positivity is exact)."""
    d = rng.dirichlet(np.ones(4))
    rho = np.diag(d).astype(complex)
    m14 = np.sqrt(d[0] * d[3]) * rng.uniform()
    m23 = np.sqrt(d[1] * d[2]) * rng.uniform()
    rho[0, 3] = m14 * np.exp(1j * rng.uniform(0, 2 * np.pi))
    rho[3, 0] = np.conj(rho[0, 3])
    rho[1, 2] = m23 * np.exp(1j * rng.uniform(0, 2 * np.pi))
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def random_sphere_point(rng: np.random.Generator) -> tuple:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return tuple(v)


def brute_force_ensemble(rho: np.ndarray, t: float, y1: float, y2: float,
                         y3: float) -> list:
    """Measurement ensemble via explicit projectors and diagonalization."""
    v = t * I2 + 1j * (y1 * SX + y2 * SY + y3 * SZ)
    out = []
    for i in range(2):
        basis = np.zeros(2)
        basis[i] = 1.0
        proj = np.kron(I2, v @ np.outer(basis, basis) @ v.conj().T)
        conditioned = proj @ rho @ proj
        p = float(np.trace(conditioned).real)
        if p > 1e-14:
            eigs = np.sort(np.linalg.eigvalsh(conditioned / p))[::-1][:2]
        else:
            eigs = np.array([1.0, 0.0])
        out.append((p, eigs))
    return out


def brute_force_conditional_entropy(rho, t, y1, y2, y3) -> float:
    total = 0.0
    for p, eigs in brute_force_ensemble(rho, t, y1, y2, y3):
        if p > 1e-14:
            clipped = np.clip(eigs, 0.0, 1.0)
            nz = clipped[clipped > 0]
            total += p * float(-(nz * np.log2(nz)).sum())
    return total
