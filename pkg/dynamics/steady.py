# steady.py
import logging
import math

import numpy as np

from model.errors import DegenerateSteadyStateError
from model.parameters import SystemParams
from model.states import BasisConvention, DensityMatrix
from .liouville import apply_generator, build_superoperator, unvectorize

logger = logging.getLogger('SteadyState')

KERNEL_GAP = 1e-8
RESIDUAL_TOL = 1e-11


def alpha(params: SystemParams) -> complex:
    """alpha = -(delta + 2i gamma)"""
    return -(params.delta + 2j * params.gamma)


def steady_state_analytic(params: SystemParams) -> DensityMatrix:
    """Closed-form steady state in the Dicke basis (ee, s, a, gg).

    The undriven limit omega = 0 needs no special case: the expression
    reduces to |gg><gg| because gamma > 0.
    """
    w, g = params.omega, params.gamma
    a = alpha(params)
    a_conj = a.conjugate()
    a2 = abs(a) ** 2
    root2 = math.sqrt(2)
    norm = 16 * w ** 4 + (4 * w ** 2 + g ** 2) * a2

    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 4 * w ** 4
    rho[0, 1] = 2 * root2 * w ** 3 * a
    rho[0, 3] = -2j * w ** 2 * g * a
    rho[1, 0] = 2 * root2 * w ** 3 * a_conj
    rho[1, 1] = 2 * w ** 2 * (2 * w ** 2 + a2)
    rho[1, 3] = root2 * w * (2 * w ** 2 * a - 1j * g * a2)
    rho[2, 2] = 4 * w ** 4
    rho[3, 0] = 2j * w ** 2 * g * a_conj
    rho[3, 1] = root2 * w * (2 * w ** 2 * a_conj + 1j * g * a2)
    rho[3, 3] = 4 * w ** 4 + (2 * w ** 2 + g ** 2) * a2
    return DensityMatrix(rho / norm, BasisConvention.DICKE)


def steady_state_numeric(params: SystemParams) -> DensityMatrix:
    """Kernel of the superoperator, found by singular value decomposition"""
    generator = build_superoperator(params).entries
    _, singular_values, vh = np.linalg.svd(generator)
    gap = singular_values[-2]
    logger.debug(
        f"Smallest singular values {singular_values[-1]:.3e}, {gap:.3e} for {params}"
    )
    if gap <= KERNEL_GAP * params.gamma:
        raise DegenerateSteadyStateError(
            f"Steady state is not unique: second-smallest singular value {gap:.3e}",
            singular_values=singular_values
        )

    kernel = unvectorize(vh[-1].conj())
    state, _ = DensityMatrix.from_matrix(kernel / np.trace(kernel), BasisConvention.DICKE)

    residual = np.max(np.abs(apply_generator(params, state)))
    if residual > RESIDUAL_TOL:
        logger.warning(f"Steady-state residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e}")
    return state


def steady_state_distance(params: SystemParams) -> float:
    """Frobenius distance between the closed-form and the numeric steady state"""
    return steady_state_analytic(params).distance(steady_state_numeric(params))
