"""Brute-force reference evolutions.

Two independent checks of the propagator/assembly pipeline:

* direct_evolution_bosonic exponentiates the full system + single-mode
  Hamiltonian on a truncated Fock space and traces the mode out exactly.
  No transformed variables, no per-branch bookkeeping; agreement with the
  assembled density matrix is the defining test of the analytic route.

* finite_n_spin_bath evolves the system coupled to N bath spins through
  collective ladder operators, with the bath prepared in the Boltzmann
  occupation distribution of the limiting collective mode carried on the
  N-spin ladder.  Its reduced dynamics converges to the bosonic model as
  N grows, which checks the large-N reduction of the spin bath to a
  single mode.

The system Hamiltonian matrix in the basis |00>, |01>, |10>, |11> is

    [[Jz - eps, 0,          0,         0],
     [0,        -Jz,        J + 2i Dz, 0],
     [0,        J - 2i Dz,  -Jz,       0],
     [0,        0,          0,         Jz + eps]]

and the qubits exchange excitations with the bath through
g (S1+ + S2+) a + h.c. (bosonic) or (g/sqrt(N)) (S1+ + S2+) J- + h.c.
(N spins).
"""

from __future__ import annotations

import math

import numpy as np

from .model import InitialState, InvariantViolation, ModelParams

_MAX_BATH_SPINS = 12
_MAX_DENSE_SPINS = 10

_I2 = np.eye(2)
_RAISE = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |0> -> |1>


def system_hamiltonian(params: ModelParams) -> np.ndarray:
    """Two-qubit Hamiltonian matrix in the product basis."""
    eps, j, jz, dz = params.epsilon, params.j_coupling, params.j_z, params.d_z
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = jz - eps
    h[1, 1] = -jz
    h[2, 2] = -jz
    h[3, 3] = jz + eps
    h[1, 2] = j + 2j * dz
    h[2, 1] = j - 2j * dz
    return h


def _system_raising() -> np.ndarray:
    return np.kron(_RAISE, _I2) + np.kron(_I2, _RAISE)


def bosonic_hamiltonian(params: ModelParams, n_cut: int) -> np.ndarray:
    """Joint Hamiltonian on system x Fock(0..n_cut), explicitly Hermitian."""
    dim_b = n_cut + 1
    a = np.diag(np.sqrt(np.arange(1, dim_b)), 1)
    number = np.diag(np.arange(dim_b, dtype=float))
    sp = _system_raising()
    h = (np.kron(system_hamiltonian(params), np.eye(dim_b))
         + np.kron(np.eye(4), 2.0 * params.g_bath * number)
         + params.g_sys_bath * (np.kron(sp, a) + np.kron(sp.conj().T, a.conj().T)))
    return h


def evolve_state(hamiltonian: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) psi0 through the eigendecomposition of Hermitian H."""
    evals, evecs = np.linalg.eigh(hamiltonian)
    return evecs @ (np.exp(-1j * evals * t) * (evecs.conj().T @ psi0))


def _thermal_mixture(evals, evecs, psi_s, bath_vectors, weights, times, dim_b):
    """Weighted sum of reduced projectors over initial bath vectors."""
    rhos = np.zeros((len(times), 4, 4), dtype=complex)
    prepared = []
    for vec in bath_vectors:
        psi0 = np.kron(psi_s, vec)
        prepared.append(evecs.conj().T @ psi0)
    for it, t in enumerate(times):
        phase = np.exp(-1j * evals * t)
        for w, coeffs in zip(weights, prepared):
            if w == 0.0:
                continue
            psit = evecs @ (phase * coeffs)
            norm = float(np.vdot(psit, psit).real)
            if abs(norm - 1.0) > 1e-10:
                raise InvariantViolation(
                    f"joint state norm drifted to {norm} (truncation too small)")
            psi = psit.reshape(4, dim_b)
            rhos[it] += w * (psi @ psi.conj().T)
    return rhos


def bosonic_series(params: ModelParams, state0: InitialState, times,
                   n_cut: int, n_max: int | None = None) -> np.ndarray:
    """Reduced density matrices from direct joint evolution, per time.

    Thermally mixes the evolutions of |psi_s(0)>|n> for n <= n_max with
    the same closed-form geometric weights as the analytic assembly.
    n_cut must leave two levels of headroom above n_max because the
    |11> branch raises the occupation by up to two.
    """
    if n_max is None:
        n_max = n_cut - 2
    if n_cut < n_max + 2:
        raise InvariantViolation(f"n_cut={n_cut} must be >= n_max + 2 = {n_max + 2}")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    dim_b = n_cut + 1
    evals, evecs = np.linalg.eigh(bosonic_hamiltonian(params, n_cut))
    psi_s = np.array([state0.alpha, 0.0, 0.0, state0.beta], dtype=complex)
    ratio = math.exp(-2.0 * params.g_bath / params.temperature)
    weights = [(1.0 - ratio) * ratio ** n for n in range(n_max + 1)]
    bath_vectors = [np.eye(dim_b)[n] for n in range(n_max + 1)]
    return _thermal_mixture(evals, evecs, psi_s, bath_vectors, weights, times, dim_b)


def direct_evolution_bosonic(params: ModelParams, state0: InitialState,
                             t: float, n_cut: int,
                             n_max: int | None = None) -> np.ndarray:
    """Reduced density matrix at one time from direct joint evolution."""
    return bosonic_series(params, state0, [t], n_cut, n_max=n_max)[0]


# ---------------------------------------------------------------------------
# finite-N spin bath


def _collective_ladder(n_spins: int) -> np.ndarray:
    """J+ on the symmetric (j = N/2) ladder, occupation-ordered."""
    j = n_spins / 2.0
    dim = n_spins + 1
    jp = np.zeros((dim, dim))
    for occupation in range(dim - 1):
        m = occupation - j
        jp[occupation + 1, occupation] = math.sqrt(j * (j + 1) - m * (m + 1))
    return jp


def _ladder_energies(params: ModelParams, n_spins: int) -> np.ndarray:
    """XY-bath energies of the symmetric ladder states, E_n = 2 g0 n (1 - n/N)."""
    ns = np.arange(n_spins + 1, dtype=float)
    return 2.0 * params.g_bath * ns * (1.0 - ns / n_spins)


def _dicke_vectors(n_spins: int) -> np.ndarray:
    """Symmetric n-excitation states embedded in the 2^N product space."""
    dim = 2 ** n_spins
    vectors = np.zeros((n_spins + 1, dim))
    for basis_index in range(dim):
        n_up = bin(basis_index).count("1")
        vectors[n_up, basis_index] = 1.0
    for n_up in range(n_spins + 1):
        vectors[n_up] /= np.linalg.norm(vectors[n_up])
    return vectors


def _spin_operator_sum(n_spins: int, local: np.ndarray) -> np.ndarray:
    """Sum over bath sites of a single-site operator."""
    dim = 2 ** n_spins
    total = np.zeros((dim, dim), dtype=complex)
    for site in range(n_spins):
        op = np.array([[1.0]], dtype=complex)
        for k in range(n_spins):
            op = np.kron(op, local if k == site else _I2)
        total += op
    return total


def _xy_bath_hamiltonian(params: ModelParams, n_spins: int) -> np.ndarray:
    """Full XY bath Hamiltonian (g0/N) sum_{j != k} (s_j+ s_k- + s_j- s_k+)."""
    jp = _spin_operator_sum(n_spins, _RAISE)
    jm = jp.conj().T
    # sum over ordered pairs equals J+J- + J-J+ minus the on-site terms,
    # which add up to the identity once per site
    dim = 2 ** n_spins
    return (params.g_bath / n_spins) * (jp @ jm + jm @ jp - n_spins * np.eye(dim))


def finite_n_spin_bath(params: ModelParams, state0: InitialState, t,
                       n_spins: int, method: str = "collective") -> np.ndarray:
    """Reduced density matrix with an N-spin bath replacing the mode.

    The qubits couple to the bath only through the collective raising and
    lowering operators, so the symmetric j = N/2 ladder is an invariant
    sector; its N + 1 states are the finite-N counterpart of the Fock
    states.  The bath starts in the Boltzmann occupation distribution
    exp(-2 g0 n / T) of the limiting mode, normalized on the ladder, and
    evolves under the exact finite-N Hamiltonian (ladder energies
    2 g0 n (1 - n/N), coupling matrix elements g sqrt(n (N - n + 1) / N)).
    The deviation from the bosonic model is O(1/N).

    method="dense" runs the identical preparation embedded in the full
    2^N product space as an independence check on the sector algebra.
    Returns the matrix at time t, or a (len(t), 4, 4) array if t is a
    sequence.
    """
    if n_spins < 1:
        raise InvariantViolation(f"n_spins must be >= 1, got {n_spins}")
    if n_spins > _MAX_BATH_SPINS:
        raise InvariantViolation(
            f"n_spins={n_spins} exceeds the cap of {_MAX_BATH_SPINS}")
    times = np.atleast_1d(np.asarray(t, dtype=float))
    psi_s = np.array([state0.alpha, 0.0, 0.0, state0.beta], dtype=complex)
    scalar = np.isscalar(t) or np.ndim(t) == 0

    energies = _ladder_energies(params, n_spins)
    boltzmann = np.exp(-2.0 * params.g_bath * np.arange(n_spins + 1)
                       / params.temperature)
    weights = boltzmann / boltzmann.sum()

    if method == "collective":
        dim_b = n_spins + 1
        jp = _collective_ladder(n_spins)
        coupling = params.g_sys_bath / math.sqrt(n_spins)
        sp = _system_raising()
        h = (np.kron(system_hamiltonian(params), np.eye(dim_b))
             + np.kron(np.eye(4), np.diag(energies))
             + coupling * (np.kron(sp, jp.T) + np.kron(sp.conj().T, jp)))
        bath_vectors = [np.eye(dim_b)[n] for n in range(dim_b)]
    elif method == "dense":
        if n_spins > _MAX_DENSE_SPINS:
            raise InvariantViolation(
                f"dense evolution capped at {_MAX_DENSE_SPINS} bath spins")
        dim_b = 2 ** n_spins
        jp = _spin_operator_sum(n_spins, _RAISE)
        coupling = params.g_sys_bath / math.sqrt(n_spins)
        sp = _system_raising()
        h = (np.kron(system_hamiltonian(params), np.eye(dim_b))
             + np.kron(np.eye(4), _xy_bath_hamiltonian(params, n_spins))
             + coupling * (np.kron(sp, jp.conj().T) + np.kron(sp.conj().T, jp)))
        bath_vectors = list(_dicke_vectors(n_spins).astype(complex))
    else:
        raise ValueError(f"unknown method {method!r}")

    evals, evecs = np.linalg.eigh(h)
    rhos = _thermal_mixture(evals, evecs, psi_s, bath_vectors, weights,
                            times, dim_b)
    return rhos[0] if scalar else rhos


def finite_n_full_thermal(params: ModelParams, state0: InitialState, t: float,
                          n_spins: int) -> np.ndarray:
    """Reduced state with the bath in the full 2^N XY thermal state.

    Kept for comparison only.  The full thermal state is dominated by
    low-collective-spin configurations whose coupling to the qubits
    vanishes as N grows, so this preparation tends to the decoupled
    limit rather than to the collective-mode model; see the tests for
    the measured saturation.
    """
    if n_spins > 8:
        raise InvariantViolation("full-thermal comparison capped at 8 bath spins")
    dim_b = 2 ** n_spins
    hb = _xy_bath_hamiltonian(params, n_spins)
    eb, vb = np.linalg.eigh(hb)
    boltzmann = np.exp(-(eb - eb.min()) / params.temperature)
    weights = boltzmann / boltzmann.sum()
    jp = _spin_operator_sum(n_spins, _RAISE)
    coupling = params.g_sys_bath / math.sqrt(n_spins)
    sp = _system_raising()
    h = (np.kron(system_hamiltonian(params), np.eye(dim_b))
         + np.kron(np.eye(4), hb)
         + coupling * (np.kron(sp, jp.conj().T) + np.kron(sp.conj().T, jp)))
    evals, evecs = np.linalg.eigh(h)
    psi_s = np.array([state0.alpha, 0.0, 0.0, state0.beta], dtype=complex)
    bath_vectors = [vb[:, i] for i in range(dim_b)]
    return _thermal_mixture(evals, evecs, psi_s, bath_vectors, weights,
                            [t], dim_b)[0]
