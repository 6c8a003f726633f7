# test_liouville.py
import math

import numpy as np

from model.parameters import SystemParams
from model.states import pure_state
from dynamics.liouville import (
    apply_generator,
    build_hamiltonian,
    build_superoperator,
    lowering_operators,
    unvectorize,
    vectorize
)
from dynamics.steady import steady_state_analytic
from conftest import random_density, random_hermitian

ROOT2 = math.sqrt(2)


def test_hamiltonian_matches_hand_expansion():
    hamiltonian = build_hamiltonian(SystemParams(omega=1.0, delta=0.0))
    expected = np.zeros((4, 4))
    expected[0, 1] = expected[1, 0] = ROOT2
    expected[1, 3] = expected[3, 1] = ROOT2
    assert np.max(np.abs(hamiltonian - expected)) < 1e-15


def test_hamiltonian_blockade_shift():
    hamiltonian = build_hamiltonian(SystemParams(omega=0.0, delta=7.0))
    assert np.max(np.abs(hamiltonian - np.diag([7.0, 0, 0, 0]))) < 1e-15


def test_lowering_operators_in_dicke_basis():
    s1, s2 = lowering_operators()
    total = s1 + s2
    expected = np.zeros((4, 4))
    expected[1, 0] = ROOT2   # |s><ee|
    expected[3, 1] = ROOT2   # |gg><s|
    assert np.max(np.abs(total - expected)) < 1e-15
    # S-_1 - S-_2 couples through the antisymmetric state
    difference = s1 - s2
    assert abs(difference[2, 0] + ROOT2) < 1e-15
    assert abs(difference[3, 2] - ROOT2) < 1e-15


def test_generator_annihilates_closed_form_steady_state(acceptance_grid):
    for params in acceptance_grid:
        derivative = apply_generator(params, steady_state_analytic(params))
        assert np.max(np.abs(derivative)) < 1e-11 * params.gamma


def test_ground_state_is_stationary_without_drive():
    derivative = apply_generator(SystemParams(omega=0.0, delta=3.0), pure_state('gg'))
    assert np.max(np.abs(derivative)) == 0


def test_excited_pair_decays_at_four_gamma():
    derivative = apply_generator(SystemParams(omega=0.0, delta=0.0), pure_state('ee'))
    assert abs(derivative[0, 0] + 4.0) < 1e-15


def test_superoperator_matches_generator(rng):
    params = SystemParams.from_ratios(5.0, 30.0, gamma_s_frac=0.7)
    superoperator = build_superoperator(params)
    for _ in range(20):
        rho = random_density(rng)
        direct = apply_generator(params, rho)
        assert np.max(np.abs(superoperator.apply(rho.entries) - direct)) < 1e-13


def test_generator_preserves_hermiticity_and_trace(rng):
    params = SystemParams.from_ratios(15.0, 30.0)
    for _ in range(20):
        x = random_hermitian(rng)
        x = x / np.linalg.norm(x)
        derivative = apply_generator(params, x)
        assert np.max(np.abs(derivative - derivative.conj().T)) < 1e-13
        assert abs(np.trace(derivative)) < 1e-13


def test_column_stacking_convention(rng):
    a, x, b = (rng.normal(size=(4, 4)) for _ in range(3))
    assert np.allclose(vectorize(a @ x @ b), np.kron(b.T, a) @ vectorize(x))
    assert np.array_equal(unvectorize(vectorize(x)), x)


def test_superoperator_has_one_dimensional_kernel(acceptance_grid):
    for params in acceptance_grid + [SystemParams(omega=0.0, delta=30.0)]:
        entries = build_superoperator(params).entries
        assert entries.shape == (16, 16)
        assert np.linalg.matrix_rank(entries) == 15
