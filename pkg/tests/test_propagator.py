import numpy as np
import pytest

from spinbath import (Generator4, PropagationError, Variant,
                      bosonic_hamiltonian, build_generator_plain,
                      build_generator_tilde, coefficient_norm,
                      coefficient_series, evolve_coefficients, evolve_state,
                      initial_vector, norm_weights, phase_factor)
from spinbath.propagator import _propagate

from conftest import fig_params


def test_plain_generator_boundaries():
    params = fig_params(d_z=1.0)
    m0 = build_generator_plain(params, 0).matrix
    assert m0[0, 1] == 0 and m0[0, 2] == 0

    m1 = build_generator_plain(params, 1).matrix
    assert m1[1, 3] == 0 and m1[2, 3] == 0


def test_generator_transcription_reference_point():
    params = fig_params(d_z=1.0)
    m = build_generator_plain(params, 2).matrix
    assert m[1, 2] == pytest.approx(2 + 2j)
    assert m[2, 1] == pytest.approx(2 - 2j)
    assert m[0, 0] == pytest.approx(params.j_z - params.epsilon + 2 * params.g_bath)
    assert m[0, 1] == pytest.approx(2.0)  # g * n

    mt = build_generator_tilde(params, 0).matrix
    assert mt[1, 0] == pytest.approx(2.0)  # g * (n + 2)
    assert mt[3, 1] == pytest.approx(1.0)  # g * (n + 1)
    assert mt[1, 2] == pytest.approx(2 + 2j)


def test_decoupled_generator_block_structure():
    params = fig_params(g_sys_bath=0.0)
    for build in (build_generator_plain, build_generator_tilde):
        m = build(params, 3).matrix
        coupling = [m[0, 1], m[0, 2], m[1, 0], m[2, 0],
                    m[1, 3], m[2, 3], m[3, 1], m[3, 2]]
        assert all(c == 0 for c in coupling)


def test_evolution_identity_at_t0():
    gen = build_generator_plain(fig_params(), 4)
    coeffs = evolve_coefficients(gen, 0.0)
    assert np.allclose(coeffs.vector(), initial_vector(Variant.PLAIN))


def test_decoupled_phase_evolution():
    params = fig_params(g_sys_bath=0.0)
    gen = build_generator_plain(params, 5)
    t = 1.37
    coeffs = evolve_coefficients(gen, t)
    expected = np.exp(-1j * (params.j_z - params.epsilon + 2 * params.g_bath) * t)
    assert abs(coeffs.a1 - expected) < 1e-12
    assert abs(coeffs.b1) + abs(coeffs.c1) + abs(coeffs.d1) < 1e-14


def test_plain_branch_matches_direct_joint_evolution():
    # evolve |00>|1> directly in the joint space and read off the branch
    # amplitudes; at n=1 the global phase is trivial
    params = fig_params(d_z=1.0)
    n_cut = 6
    t = 0.7
    h = bosonic_hamiltonian(params, n_cut)
    psi0 = np.zeros(4 * (n_cut + 1), dtype=complex)
    psi0[0 * (n_cut + 1) + 1] = 1.0
    psit = evolve_state(h, psi0, t).reshape(4, n_cut + 1)

    coeffs = evolve_coefficients(build_generator_plain(params, 1), t)
    assert abs(psit[0, 1] - coeffs.a1) < 1e-10
    assert abs(psit[1, 0] - coeffs.b1) < 1e-10
    assert abs(psit[2, 0] - coeffs.c1) < 1e-10


def test_tilde_branch_carries_global_phase():
    # from |11>|0> the d1 amplitude picks up exp(-2i g0 t) on top of the
    # branch coefficient; the joint evolution never factors phases
    params = fig_params(d_z=1.0)
    n_cut = 6
    t = 0.9
    h = bosonic_hamiltonian(params, n_cut)
    psi0 = np.zeros(4 * (n_cut + 1), dtype=complex)
    psi0[3 * (n_cut + 1) + 0] = 1.0
    psit = evolve_state(h, psi0, t).reshape(4, n_cut + 1)

    coeffs = evolve_coefficients(build_generator_tilde(params, 0), t)
    phase = phase_factor(Variant.TILDE, params, 0, t)
    assert abs(psit[3, 0] - phase * coeffs.d1) < 1e-10
    assert abs(psit[1, 1] - phase * coeffs.b1) < 1e-10
    assert abs(psit[0, 2] - phase * np.sqrt(2.0) * coeffs.a1) < 1e-10


def test_norm_conservation_sampled():
    times = np.linspace(0.1, 10, 23)
    for d_z in (0.0, 2.0):
        params = fig_params(d_z=d_z)
        for n in (0, 1, 2, 7, 19):
            for build, variant in ((build_generator_plain, Variant.PLAIN),
                                   (build_generator_tilde, Variant.TILDE)):
                amps = coefficient_series(build(params, n), times)
                w = norm_weights(variant, n)
                norms = (np.abs(amps) ** 2) @ w
                assert np.max(np.abs(norms - 1)) < 1e-10


def test_coefficient_norm_value():
    gen = build_generator_tilde(fig_params(), 3)
    coeffs = evolve_coefficients(gen, 2.3)
    assert coefficient_norm(coeffs) == pytest.approx(1.0, abs=1e-10)


def test_dm_sign_flip_swaps_single_flip_amplitudes():
    times = np.linspace(0.0, 6.0, 13)
    for build in (build_generator_plain, build_generator_tilde):
        for n in (1, 4):
            plus = coefficient_series(build(fig_params(d_z=2.0), n), times)
            minus = coefficient_series(build(fig_params(d_z=-2.0), n), times)
            assert np.max(np.abs(plus[:, 0] - minus[:, 0])) < 1e-12
            assert np.max(np.abs(plus[:, 3] - minus[:, 3])) < 1e-12
            assert np.max(np.abs(plus[:, 1] - minus[:, 2])) < 1e-12
            assert np.max(np.abs(plus[:, 2] - minus[:, 1])) < 1e-12


def test_propagate_falls_back_for_defective_matrix():
    # a Jordan block is not diagonalizable; the expm fallback must handle it
    jordan = np.diag([1.0, 1.0, 2.0, 3.0]).astype(complex)
    jordan[0, 1] = 1.0
    x0 = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
    times = np.array([0.0, 0.4, 1.1])
    got = _propagate(jordan, times, x0)
    from scipy.linalg import expm
    for row, t in zip(got, times):
        assert np.allclose(row, expm(-1j * jordan * t) @ x0, atol=1e-12)


def test_nonconservative_generator_raises():
    bogus = Generator4(matrix=1j * np.eye(4), fock_index=2, variant=Variant.PLAIN)
    with pytest.raises(PropagationError):
        coefficient_series(bogus, [1.0])


def test_rejects_bad_inputs():
    gen = build_generator_plain(fig_params(), 2)
    with pytest.raises(ValueError):
        coefficient_series(gen, [-0.1])
    with pytest.raises(ValueError):
        coefficient_series(gen, [1.0], init=[1.0, 1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        build_generator_plain(fig_params(), -1)
