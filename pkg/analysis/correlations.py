# correlations.py
"""
Photon-photon correlations of the light scattered by the atom pair.

A detector at phase phi measures D(phi) = S-_1 + exp(i phi) S-_2. The delayed
correlation is obtained by collapsing the steady state with D(phi1),
propagating the conditioned state for a delay tau and measuring D(phi2).
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from model.errors import InputError, UndefinedRatioError, UndetectablePhotonError
from model.parameters import DetectorGeometry, SystemParams
from model.states import BasisConvention, StateLike, as_dicke_array, transform_operator
from dynamics.evolution import IntegratorConfig, propagate
from dynamics.liouville import lowering_operators
from dynamics.steady import alpha, steady_state_numeric

logger = logging.getLogger('Correlations')

DETECTION_FLOOR = 1e-14
DEFAULT_TAU_MAX = 10.0
DEFAULT_TAU_POINTS = 200


def detector_operator(phi: float) -> np.ndarray:
    """D(phi) = S-_1 + exp(i phi) S-_2 in the product basis"""
    if not math.isfinite(phi):
        raise InputError(f"Detector phase must be finite, got {phi}")
    s1, s2 = lowering_operators(BasisConvention.PRODUCT)
    return s1 + np.exp(1j * phi) * s2


def _dicke_detector(phi: float) -> np.ndarray:
    return transform_operator(detector_operator(phi), BasisConvention.PRODUCT, BasisConvention.DICKE)


def detection_probability(rho: StateLike, phi: float) -> float:
    """<D(phi)^dagger D(phi)> in the state rho (raw arrays are taken as Dicke)"""
    detector = _dicke_detector(phi)
    return float(np.trace(detector.conj().T @ detector @ as_dicke_array(rho)).real)


def default_tau_grid(tau_max: float = DEFAULT_TAU_MAX, points: int = DEFAULT_TAU_POINTS) -> np.ndarray:
    """tau = 0 followed by log-spaced delays up to tau_max"""
    if tau_max <= 0:
        raise InputError(f"tau_max must be positive, got {tau_max}")
    if points < 2:
        raise InputError(f"A tau grid needs at least 2 points, got {points}")
    start = min(1e-3, tau_max / 10)
    return np.concatenate(([0.0], np.geomspace(start, tau_max, points - 1)))


def g2(params: SystemParams, geom: DetectorGeometry, tau_grid: Optional[Sequence[float]] = None,
       cfg: Optional[IntegratorConfig] = None) -> np.ndarray:
    """Normalized second-order correlation g2(tau) with the system in its steady state.

    Values are returned in the order of tau_grid.
    """
    taus = default_tau_grid() if tau_grid is None else np.asarray(tau_grid, dtype=float)
    if taus.ndim != 1 or len(taus) == 0:
        raise InputError("tau grid must be a non-empty list of delays")
    if not np.all(np.isfinite(taus)) or np.any(taus < 0):
        raise InputError("Delays must be finite and non-negative")

    steady = steady_state_numeric(params).entries
    first = _dicke_detector(geom.phi1)
    second = _dicke_detector(geom.phi2)
    counter = second.conj().T @ second

    collapsed = first @ steady @ first.conj().T
    p_first = np.trace(collapsed).real
    if p_first < DETECTION_FLOOR:
        raise UndetectablePhotonError(
            f"First detector click probability is {p_first:.3e}; the atoms scatter no light "
            f"for these parameters (omega={params.omega})"
        )
    conditioned = collapsed / p_first
    p_second = np.trace(counter @ steady).real

    unique_taus, order = np.unique(taus, return_inverse=True)
    evolved = propagate(params, conditioned, unique_taus, cfg)
    values = np.einsum('ij,tji->t', counter, evolved).real / p_second

    logger.info(
        f"g2 on {len(unique_taus)} delays (phi1={geom.phi1:.6g}, phi2={geom.phi2:.6g}): "
        f"g2({unique_taus[0]:.3g})={values[0]:.6g}"
    )
    return values[order]


def g2_zero_analytic(params: SystemParams, geom: DetectorGeometry) -> float:
    """Closed-form g2(0) of the steady state for detector phases phi1, phi2"""
    if params.omega == 0:
        raise UndefinedRatioError("g2(0) is undefined without driving (omega = 0)")
    w2 = params.omega ** 2
    a2 = abs(alpha(params)) ** 2
    norm = 16 * w2 ** 2 + (4 * w2 + params.gamma ** 2) * a2
    numerator = 4 * norm * math.cos((geom.phi1 - geom.phi2) / 2) ** 2
    denominator = ((8 * w2 + a2 * (1 + math.cos(geom.phi1)))
                   * (8 * w2 + a2 * (1 + math.cos(geom.phi2))))
    return numerator / denominator


def monitor_ratio(params: SystemParams) -> float:
    """Coincidence signal at phi1 = phi2 = pi/2, equal to the steady-state P_ee/P_e^2"""
    return g2_zero_analytic(params, DetectorGeometry.quadrature())
