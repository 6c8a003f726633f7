# evolution.py
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from model.errors import InputError, IntegrationError
from model.parameters import SystemParams
from model.states import BasisConvention, DensityMatrix, StateLike, as_dicke_array
from .liouville import build_superoperator, unvectorize, vectorize

logger = logging.getLogger('Evolution')

SAMPLE_POSITIVITY_TOL = -1e-8
BACKENDS = ('rk45', 'expm')


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and step controls; times are in units of 1/gamma"""
    rel_tol: float = 1e-9
    abs_tol: float = 1e-11
    max_step: float = 0.5
    initial_step: Optional[float] = None
    backend: str = 'rk45'

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise InputError("Integrator tolerances must be positive")
        if self.max_step <= 0:
            raise InputError("max_step must be positive")
        if self.initial_step is not None and self.initial_step <= 0:
            raise InputError("initial_step must be positive when given")
        if self.backend not in BACKENDS:
            raise InputError(f"Unknown backend '{self.backend}' (expected one of {BACKENDS})")

    def to_dict(self) -> Dict:
        return {
            'rel_tol': self.rel_tol,
            'abs_tol': self.abs_tol,
            'max_step': self.max_step,
            'initial_step': self.initial_step,
            'backend': self.backend
        }


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-ordered density matrices sampled from one integration"""
    times: np.ndarray
    states: Tuple[DensityMatrix, ...]
    params: SystemParams

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        if len(times) != len(self.states):
            raise InputError("Trajectory needs exactly one state per sample time")
        if np.any(np.diff(times) <= 0):
            raise InputError("Trajectory times must be strictly increasing")
        times.setflags(write=False)
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'states', tuple(self.states))

    def __len__(self) -> int:
        return len(self.states)

    @property
    def final_state(self) -> DensityMatrix:
        return self.states[-1]

    def scaled_times(self) -> np.ndarray:
        """Sample times as gamma*t"""
        return self.times * self.params.gamma


def _check_sample_times(times: Sequence[float], t_end: float) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise InputError("Sample grid must be a non-empty list of times")
    if not np.all(np.isfinite(times)):
        raise InputError("Sample times must be finite")
    if times[0] < 0 or times[-1] > t_end:
        raise InputError(f"Sample times must lie in [0, {t_end}]")
    if np.any(np.diff(times) <= 0):
        raise InputError("Sample times must be strictly increasing")
    return times


def propagate(params: SystemParams, m0: StateLike, times: Sequence[float],
              cfg: Optional[IntegratorConfig] = None) -> np.ndarray:
    """Propagate a Dicke-basis matrix from t = 0 and return it at each time, unnormalized.

    Returns an array of shape (len(times), 4, 4).
    """
    cfg = cfg or IntegratorConfig()
    start = as_dicke_array(m0)
    times = np.asarray(times, dtype=float)
    if len(times) == 0:
        return np.zeros((0, 4, 4), dtype=complex)
    times = _check_sample_times(times, times[-1])

    generator = build_superoperator(params).entries
    y0 = vectorize(start)

    if times[-1] == 0:
        return np.repeat(start[np.newaxis], len(times), axis=0)

    if cfg.backend == 'expm':
        samples = []
        previous, current = 0.0, y0
        for t in times:
            current = expm(generator * (t - previous)) @ current
            previous = t
            samples.append(unvectorize(current))
        return np.array(samples)

    solution = solve_ivp(
        lambda t, y: generator @ y,
        (0.0, float(times[-1])),
        y0,
        method='RK45',
        t_eval=times,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        first_step=cfg.initial_step
    )
    if solution.status != 0:
        reached = float(solution.t[-1]) if len(solution.t) else 0.0
        logger.warning(f"Integration stopped at t={reached:.6g}: {solution.message}")
        raise IntegrationError(
            f"Integration failed before t={times[-1]:.6g}: {solution.message}",
            time_reached=reached
        )
    return np.array([unvectorize(column) for column in solution.y.T])


def evolve(params: SystemParams, rho0: DensityMatrix, t_end: float,
           sample_times: Optional[Sequence[float]] = None,
           cfg: Optional[IntegratorConfig] = None) -> Trajectory:
    """Integrate the master equation and store re-Hermitized, renormalized samples"""
    if not t_end > 0:
        raise InputError(f"t_end must be positive, got {t_end}")
    if sample_times is None:
        sample_times = np.linspace(0.0, t_end, 201)
    times = _check_sample_times(sample_times, t_end)
    cfg = cfg or IntegratorConfig()

    raw = propagate(params, rho0, times, cfg)

    states = []
    max_deviation = 0.0
    for t, matrix in zip(times, raw):
        state, deviation = DensityMatrix.from_matrix(
            matrix, BasisConvention.DICKE, SAMPLE_POSITIVITY_TOL
        )
        logger.debug(f"t={t:.6g}: removed trace deviation {deviation:.3e}")
        max_deviation = max(max_deviation, deviation)
        states.append(state)

    logger.info(
        f"Evolved {len(states)} samples to t={times[-1]:.6g} "
        f"({cfg.backend}, max trace deviation {max_deviation:.3e})"
    )
    return Trajectory(times, tuple(states), params)


def evolve_matrix(params: SystemParams, m0: StateLike, t_end: float,
                  cfg: Optional[IntegratorConfig] = None) -> np.ndarray:
    """Propagate an arbitrary (possibly unnormalized) matrix to t_end without renormalization"""
    if t_end < 0:
        raise InputError(f"t_end must be non-negative, got {t_end}")
    return propagate(params, m0, [t_end], cfg)[0]
