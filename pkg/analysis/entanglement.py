# entanglement.py
import logging
import math

import numpy as np

from model.errors import InputError, NumericalError
from model.parameters import SystemParams
from model.states import BasisConvention, DensityMatrix, basis_transform
from dynamics.steady import alpha

logger = logging.getLogger('Entanglement')

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)

CLAMP_TOL = -1e-10
FAILURE_TOL = -1e-8
ZERO_BAND = 1e-9
IMAGINARY_TOL = 1e-8
METHODS = ('auto', 'general', 'hermitian')


def _snap(value: float) -> float:
    """Max{0, value} with values inside the noise band reported as exactly 0"""
    return 0.0 if value <= ZERO_BAND else float(value)


def _general_eigenvalues(rho: np.ndarray) -> np.ndarray:
    flipped = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    return np.linalg.eigvals(rho @ flipped)


def _hermitian_eigenvalues(rho: np.ndarray) -> np.ndarray:
    # sqrt(rho) from the eigendecomposition; tiny negative eigenvalues are cut at 0
    weights, vectors = np.linalg.eigh(rho)
    root = (vectors * np.sqrt(np.clip(weights, 0.0, None))) @ vectors.conj().T
    flipped = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    return np.linalg.eigvalsh(root @ flipped @ root).astype(complex)


def concurrence_eigenvalues(rho: DensityMatrix, method: str = 'auto') -> np.ndarray:
    """Eigenvalues of rho (sy x sy) rho* (sy x sy) in decreasing order, clamped at 0"""
    if method not in METHODS:
        raise InputError(f"Unknown method '{method}' (expected one of {METHODS})")
    product = basis_transform(rho, BasisConvention.PRODUCT).entries

    if method == 'hermitian':
        values = _hermitian_eigenvalues(product)
    else:
        values = _general_eigenvalues(product)
        ill_conditioned = (np.max(np.abs(values.imag)) > IMAGINARY_TOL
                           or np.min(values.real) < FAILURE_TOL)
        if method == 'auto' and ill_conditioned:
            logger.debug("General eigen-solver ill-conditioned; using the Hermitian form")
            values = _hermitian_eigenvalues(product)

    values = np.sort(values.real)[::-1]
    if values[-1] < FAILURE_TOL:
        raise NumericalError(f"Concurrence eigenvalue {values[-1]:.3e} is negative")
    if values[-1] < CLAMP_TOL:
        logger.warning(f"Clamping concurrence eigenvalue {values[-1]:.3e} to 0")
    return np.clip(values, 0.0, None)


def concurrence(rho: DensityMatrix, method: str = 'auto') -> float:
    """Wootters concurrence, computed in the product basis whatever the input tag"""
    roots = np.sqrt(concurrence_eigenvalues(rho, method))
    return _snap(roots[0] - roots[1] - roots[2] - roots[3])


def steady_concurrence_analytic(params: SystemParams) -> float:
    """Closed-form concurrence of the steady state.

    The steady concurrence is even in delta; the expression is evaluated at |delta|.
    """
    w, g, d = params.omega, params.gamma, abs(params.delta)
    a_abs = abs(alpha(params))
    a2 = a_abs ** 2
    inner = math.sqrt(16 * w ** 4 + d ** 2 * a2)
    larger = 8 * w ** 4 + d ** 2 * a2 + d * a_abs * inner
    # lambda_+ * lambda_- = 8 omega^4
    smaller = 64 * w ** 8 / larger if larger > 0 else 0.0
    lam_plus, lam_minus = math.sqrt(larger), math.sqrt(smaller)
    norm = 16 * w ** 4 + (4 * w ** 2 + g ** 2) * a2
    return _snap((math.sqrt(2) * w ** 2 * (lam_plus - lam_minus) - 8 * w ** 4) / norm)


def entanglement_window(delta: float, gamma: float) -> float:
    """Upper bound omega_max of the entangled steady states: 0 < 4 omega^2 < delta |alpha|.

    Returns 0 (empty window) when delta <= 0. Callers describing the window of a
    state with a negative shift pass |delta|.
    """
    if delta <= 0:
        return 0.0
    a_abs = math.sqrt(delta ** 2 + 4 * gamma ** 2)
    return math.sqrt(delta * a_abs) / 2
