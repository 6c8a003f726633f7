# conftest.py
import numpy as np
import pytest

from model.parameters import SystemParams
from model.states import BasisConvention, DensityMatrix

CASES = {
    'a': (5.0, 5.0),
    'b': (5.0, 30.0),
    'c': (15.0, 30.0),
}

GRID_OMEGAS = (0.5, 2.0, 5.0, 10.0, 15.0)
GRID_DELTAS = (0.0, 1.0, 5.0, 10.0, 30.0)


def random_density(rng: np.random.Generator, basis=BasisConvention.DICKE,
                   symmetric: bool = False) -> DensityMatrix:
    """Random full-rank state, optionally invariant under atom exchange"""
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    if symmetric:
        # Dicke ordering: zero the couplings of |a> to the symmetric triplet
        if basis != BasisConvention.DICKE:
            raise ValueError("symmetric states are built in the Dicke basis")
        mask = np.ones((4, 4))
        mask[2, [0, 1, 3]] = 0
        mask[[0, 1, 3], 2] = 0
        rho = rho * mask
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real, basis)


def random_hermitian(rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return a + a.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=sorted(CASES))
def case_params(request):
    omega, delta = CASES[request.param]
    return SystemParams.from_ratios(omega, delta)


@pytest.fixture
def case_b():
    return SystemParams.from_ratios(*CASES['b'])


@pytest.fixture
def acceptance_grid():
    return [SystemParams.from_ratios(w, d) for w in GRID_OMEGAS for d in GRID_DELTAS]
