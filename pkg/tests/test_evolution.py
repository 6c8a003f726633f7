# test_evolution.py
import math

import numpy as np
import pytest

from model.errors import InputError
from model.parameters import SystemParams
from model.states import pure_state
from dynamics.evolution import IntegratorConfig, Trajectory, evolve, evolve_matrix, propagate
from dynamics.liouville import build_superoperator, unvectorize, vectorize
from dynamics.steady import steady_state_numeric
from analysis.observables import double_excitation_probability, excitation_probability
from conftest import random_density, random_hermitian


def rk4_oracle(params, rho0, t_end, dt):
    """Fixed-step classical Runge-Kutta on the vectorized master equation"""
    generator = build_superoperator(params).entries
    y = vectorize(rho0)
    for _ in range(int(round(t_end / dt))):
        k1 = generator @ y
        k2 = generator @ (y + 0.5 * dt * k1)
        k3 = generator @ (y + 0.5 * dt * k2)
        k4 = generator @ (y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return unvectorize(y)


def test_free_decay_of_excited_pair():
    params = SystemParams(omega=0.0, delta=0.0)
    times = [0.0, 0.5, 1.0, 2.0]
    trajectory = evolve(params, pure_state('ee'), 2.0, times)
    for t, state in zip(times, trajectory.states):
        assert abs(double_excitation_probability(state) - math.exp(-4 * t)) < 1e-8


def test_ground_state_stays_put_without_drive():
    trajectory = evolve(SystemParams(omega=0.0, delta=5.0), pure_state('gg'), 10.0)
    for state in trajectory.states:
        assert excitation_probability(state) < 1e-15


def test_t_zero_sample_is_initial_state(case_b):
    trajectory = evolve(case_b, pure_state('gg'), 1.0, [0.0, 1.0])
    assert trajectory.states[0].distance(pure_state('gg')) < 1e-15


def test_relaxes_to_steady_state(case_params):
    trajectory = evolve(case_params, pure_state('gg'), 50.0, [0.0, 50.0])
    assert trajectory.final_state.distance(steady_state_numeric(case_params)) < 1e-6


@pytest.mark.parametrize('backend', ['rk45', 'expm'])
def test_trace_drift_before_renormalization(case_b, backend):
    times = np.linspace(0.0, 50.0, 51)
    raw = propagate(case_b, pure_state('gg'), times, IntegratorConfig(backend=backend))
    drift = np.abs(np.trace(raw, axis1=1, axis2=2) - 1)
    assert np.max(drift) < 1e-9


def test_backends_agree(case_b):
    times = np.linspace(0.0, 5.0, 11)
    rk45 = propagate(case_b, pure_state('gg'), times)
    exact = propagate(case_b, pure_state('gg'), times, IntegratorConfig(backend='expm'))
    assert np.max(np.abs(rk45 - exact)) < 1e-7


def test_fixed_step_oracle(case_b):
    adaptive = evolve_matrix(case_b, pure_state('gg'), 5.0)
    oracle = rk4_oracle(case_b, pure_state('gg').entries, 5.0, 1e-4)
    assert np.max(np.abs(adaptive - oracle)) < 1e-7


def test_linearity(rng):
    params = SystemParams.from_ratios(5.0, 5.0)
    x, y = random_hermitian(rng), random_hermitian(rng)
    cfg = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13)
    combined = evolve_matrix(params, 0.3 * x - 1.7 * y, 2.0, cfg)
    separate = 0.3 * evolve_matrix(params, x, 2.0, cfg) - 1.7 * evolve_matrix(params, y, 2.0, cfg)
    assert np.max(np.abs(combined - separate)) < 1e-8


def test_exchange_symmetry_is_preserved(rng):
    params = SystemParams.from_ratios(15.0, 30.0, gamma_s_frac=0.6)
    trajectory = evolve(params, random_density(rng, symmetric=True), 5.0)
    for state in trajectory.states:
        assert state.is_exchange_symmetric(1e-10)


def test_samples_are_valid_states(case_params):
    trajectory = evolve(case_params, pure_state('gg'), 10.0)
    assert len(trajectory) == 201
    for state in trajectory.states:
        assert np.min(np.linalg.eigvalsh(state.entries)) > -1e-8
    assert np.allclose(trajectory.scaled_times(), trajectory.times)


def test_sample_grid_validation(case_b):
    with pytest.raises(InputError):
        evolve(case_b, pure_state('gg'), 1.0, [])
    with pytest.raises(InputError):
        evolve(case_b, pure_state('gg'), 1.0, [0.0, 0.5, 0.5])
    with pytest.raises(InputError):
        evolve(case_b, pure_state('gg'), 1.0, [0.0, 2.0])
    with pytest.raises(InputError):
        evolve(case_b, pure_state('gg'), 0.0)


def test_integrator_config_validation():
    with pytest.raises(InputError):
        IntegratorConfig(rel_tol=0)
    with pytest.raises(InputError):
        IntegratorConfig(max_step=-1)
    with pytest.raises(InputError):
        IntegratorConfig(backend='euler')
    assert IntegratorConfig().to_dict()['backend'] == 'rk45'


def test_trajectory_requires_increasing_times(case_b):
    state = pure_state('gg')
    with pytest.raises(InputError):
        Trajectory(np.array([1.0, 0.5]), (state, state), case_b)


def test_zero_matrix_stays_zero(case_b):
    assert np.max(np.abs(evolve_matrix(case_b, np.zeros((4, 4)), 3.0))) == 0


def test_scaled_state_evolves_linearly(case_b):
    scaled = evolve_matrix(case_b, 0.3 * pure_state('gg').entries, 2.0)
    full = evolve(case_b, pure_state('gg'), 2.0, [0.0, 2.0]).final_state.entries
    assert np.max(np.abs(scaled - 0.3 * full)) < 1e-8


def test_steady_state_is_stationary(case_b):
    steady = steady_state_numeric(case_b).entries
    for t_end in (0.5, 5.0):
        assert np.max(np.abs(evolve_matrix(case_b, steady, t_end) - steady)) < 1e-9
