# main.py
import logging
from typing import Dict, Optional, Sequence

import numpy as np

from model.errors import InputError
from model.parameters import DetectorGeometry, SystemParams
from model.states import pure_state
from dynamics.evolution import IntegratorConfig, evolve
from dynamics.steady import alpha, steady_state_analytic, steady_state_numeric
from analysis.observables import (
    blockade_ratio,
    blockade_ratio_analytic,
    dicke_populations,
    double_excitation_probability,
    excitation_probability
)
from analysis.entanglement import concurrence, entanglement_window, steady_concurrence_analytic
from analysis.correlations import default_tau_grid, g2, g2_zero_analytic

SWEEP_SOURCES = ('analytic', 'numeric')


def steady_point(params: SystemParams, source: str = 'analytic') -> Dict:
    """Steady-state ratio, concurrence and window for one parameter point"""
    if source not in SWEEP_SOURCES:
        raise InputError(f"Unknown source '{source}' (expected one of {SWEEP_SOURCES})")
    if source == 'numeric':
        state = steady_state_numeric(params)
        ratio = blockade_ratio(state) if params.omega != 0 else float('nan')
        entanglement = concurrence(state)
    else:
        ratio = blockade_ratio_analytic(params) if params.omega != 0 else float('nan')
        entanglement = steady_concurrence_analytic(params)
    return {
        'omega': params.omega,
        'delta': params.delta,
        'ratio': ratio,
        'concurrence': entanglement,
        'omega_max': entanglement_window(abs(params.delta), params.gamma)
    }


class BlockadeSimulator:
    def __init__(self, integrator: Optional[IntegratorConfig] = None):
        """Initialize the simulator with shared integrator settings"""
        self.logger = logging.getLogger('BlockadeSimulator')
        self.integrator = integrator or IntegratorConfig()

    def trajectory_table(self, params: SystemParams, initial_state: str = 'gg',
                         t_end: float = 10.0, samples: int = 401) -> Dict[str, np.ndarray]:
        """Observables along a trajectory started from a Dicke basis state"""
        try:
            if samples < 2:
                raise InputError(f"At least 2 samples are required, got {samples}")
            times = np.linspace(0.0, t_end, samples)
            trajectory = evolve(params, pure_state(initial_state), t_end, times, self.integrator)

            columns = {name: [] for name in (
                'P_e', 'P_e_squared', 'P_ee', 'C', 'pop_ee', 'pop_s', 'pop_a', 'pop_gg'
            )}
            for state in trajectory.states:
                p_e = excitation_probability(state)
                columns['P_e'].append(p_e)
                columns['P_e_squared'].append(p_e ** 2)
                columns['P_ee'].append(double_excitation_probability(state))
                columns['C'].append(concurrence(state))
                for label, population in zip(('ee', 's', 'a', 'gg'), dicke_populations(state)):
                    columns[f'pop_{label}'].append(population)

            table = {'t_gamma': trajectory.scaled_times()}
            table.update({name: np.array(values) for name, values in columns.items()})
            self.logger.info(f"Computed trajectory table with {samples} rows")
            return table
        except Exception as e:
            self.logger.error(f"Failed to compute trajectory: {str(e)}")
            raise

    def steady_report(self, params: SystemParams) -> Dict:
        """Both steady states and the derived steady-state quantities"""
        try:
            analytic = steady_state_analytic(params)
            numeric = steady_state_numeric(params)
            driven = params.omega != 0
            a = alpha(params)

            report = {
                'params': params.to_dict(),
                'alpha': {'real': a.real, 'imag': a.imag, 'abs_squared': abs(a) ** 2},
                'steady_state_analytic': analytic.to_dict(),
                'steady_state_numeric': numeric.to_dict(),
                'frobenius_distance': analytic.distance(numeric),
                'P_e': excitation_probability(numeric),
                'P_ee': double_excitation_probability(numeric),
                'blockade_ratio': blockade_ratio_analytic(params) if driven else None,
                'blockade_ratio_numeric': blockade_ratio(numeric) if driven else None,
                'concurrence': steady_concurrence_analytic(params),
                'concurrence_numeric': concurrence(numeric),
                'omega_max': entanglement_window(abs(params.delta), params.gamma)
            }
            self.logger.info(
                f"Steady report for omega={params.omega:g}, delta={params.delta:g}: "
                f"distance {report['frobenius_distance']:.3e}"
            )
            return report
        except Exception as e:
            self.logger.error(f"Failed to compute steady report: {str(e)}")
            raise

    def correlation_curve(self, params: SystemParams, geometry: DetectorGeometry,
                          tau_grid: Optional[Sequence[float]] = None) -> Dict:
        """g2(tau) by conditional evolution plus the closed-form g2(0)"""
        try:
            taus = default_tau_grid() if tau_grid is None else np.asarray(tau_grid, dtype=float)
            values = g2(params, geometry, taus, self.integrator)
            return {
                'tau_gamma': taus * params.gamma,
                'g2': values,
                'g2_zero_analytic': g2_zero_analytic(params, geometry)
            }
        except Exception as e:
            self.logger.error(f"Failed to compute correlation curve: {str(e)}")
            raise

    def steady_point(self, params: SystemParams, source: str = 'analytic') -> Dict:
        try:
            return steady_point(params, source)
        except Exception as e:
            self.logger.error(f"Failed to evaluate steady point: {str(e)}")
            raise
