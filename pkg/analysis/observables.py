# observables.py
from typing import Tuple

import numpy as np

from model.errors import ContractViolationError, UndefinedRatioError
from model.parameters import SystemParams
from model.states import BasisConvention, DensityMatrix, basis_transform, partial_trace
from dynamics.steady import alpha

SYMMETRY_TOL = 1e-9


def excitation_probability(rho: DensityMatrix) -> float:
    """P_e = <e|Tr_1 rho|e> = <e|Tr_2 rho|e> for an exchange-symmetric state"""
    first = partial_trace(rho, 1)
    second = partial_trace(rho, 2)
    mismatch = np.max(np.abs(first - second))
    if mismatch > SYMMETRY_TOL:
        raise ContractViolationError(
            f"Reduced states of the two atoms differ by {mismatch:.3e}; state is not exchange symmetric"
        )
    return float(np.clip(first[0, 0].real, 0.0, 1.0))


def double_excitation_probability(rho: DensityMatrix) -> float:
    """P_ee = <ee|rho|ee>; |ee> is the first state of both bases"""
    return float(np.clip(rho.entries[0, 0].real, 0.0, 1.0))


def dicke_populations(rho: DensityMatrix) -> Tuple[float, float, float, float]:
    """Diagonal of rho in the (ee, s, a, gg) basis"""
    dicke = basis_transform(rho, BasisConvention.DICKE)
    return tuple(float(p) for p in np.diag(dicke.entries).real)


def blockade_ratio(rho: DensityMatrix) -> float:
    """P_ee / P_e^2 of an exchange-symmetric state"""
    p_e = excitation_probability(rho)
    if p_e == 0:
        raise UndefinedRatioError("P_ee/P_e^2 is undefined when P_e = 0")
    return double_excitation_probability(rho) / p_e ** 2


def blockade_ratio_analytic(params: SystemParams) -> float:
    """Steady-state P_ee/P_e^2 = (64 W^4 + 4(4 W^2 + g^2)|a|^2) / (8 W^2 + |a|^2)^2"""
    if params.omega == 0:
        raise UndefinedRatioError("Blockade ratio is 0/0 without driving (omega = 0)")
    w2 = params.omega ** 2
    a2 = abs(alpha(params)) ** 2
    numerator = 64 * w2 ** 2 + 4 * (4 * w2 + params.gamma ** 2) * a2
    return numerator / (8 * w2 + a2) ** 2
