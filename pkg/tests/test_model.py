import math

import numpy as np
import pytest

from spinbath import (InitialState, InvariantViolation, ModelParams,
                      TruncationConfig, choose_truncation, tail_weight)

from conftest import fig_params


def test_params_validation():
    with pytest.raises(InvariantViolation):
        fig_params(temperature=0.0)
    with pytest.raises(InvariantViolation):
        fig_params(temperature=-1.0)
    with pytest.raises(InvariantViolation):
        ModelParams(epsilon=0.5, j_coupling=2, j_z=1, d_z=0,
                    g_bath=0.0, g_sys_bath=1, temperature=2)
    with pytest.raises(InvariantViolation):
        ModelParams(epsilon=math.nan, j_coupling=2, j_z=1, d_z=0,
                    g_bath=1, g_sys_bath=1, temperature=2)


def test_initial_state_normalization():
    s = InitialState(0.6, 0.8j)
    assert s.alpha == 0.6 + 0j
    assert s.beta == 0.8j
    bell = InitialState.bell_like()
    assert abs(abs(bell.alpha) ** 2 + abs(bell.beta) ** 2 - 1) < 1e-15
    with pytest.raises(InvariantViolation):
        InitialState(1.0, 0.1)


def test_truncation_config_validation():
    with pytest.raises(InvariantViolation):
        TruncationConfig(n_max=-1, tail_tolerance=1e-6)
    with pytest.raises(InvariantViolation):
        TruncationConfig(n_max=5, tail_tolerance=0.0)


def test_choose_truncation_reference_point():
    # exp(-(n_max+1)) <= 1e-12 forces n_max + 1 >= 12 ln 10 ~ 27.6
    trunc = choose_truncation(fig_params(), 1e-12)
    assert trunc.n_max == 27
    assert tail_weight(fig_params(), 27) <= 1e-12
    assert tail_weight(fig_params(), 26) > 1e-12


def test_choose_truncation_floor():
    cold = fig_params(temperature=1e-9)
    assert choose_truncation(cold, 1e-12).n_max == 2

    loose = choose_truncation(fig_params(), 0.5)
    assert loose.n_max == 2
    assert tail_weight(fig_params(), 2) == pytest.approx(math.exp(-3.0))
    assert tail_weight(fig_params(), 2) < 0.5


def test_choose_truncation_monotone_in_tol():
    params = fig_params()
    tols = np.logspace(-1, -14, 27)
    n_maxes = [choose_truncation(params, tol).n_max for tol in tols]
    assert all(b >= a for a, b in zip(n_maxes, n_maxes[1:]))
    for tol, n_max in zip(tols, n_maxes):
        assert tail_weight(params, n_max) <= tol


def test_choose_truncation_rejects_bad_tol():
    for tol in (0.0, 1.0, -1e-3, 2.0):
        with pytest.raises(InvariantViolation):
            choose_truncation(fig_params(), tol)
