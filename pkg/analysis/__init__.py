# Analysis package initialization
from .observables import (
    excitation_probability,
    double_excitation_probability,
    dicke_populations,
    blockade_ratio,
    blockade_ratio_analytic
)
from .entanglement import concurrence, steady_concurrence_analytic, entanglement_window
from .correlations import (
    detector_operator,
    detection_probability,
    default_tau_grid,
    g2,
    g2_zero_analytic,
    monitor_ratio
)

__all__ = [
    'excitation_probability',
    'double_excitation_probability',
    'dicke_populations',
    'blockade_ratio',
    'blockade_ratio_analytic',
    'concurrence',
    'steady_concurrence_analytic',
    'entanglement_window',
    'detector_operator',
    'detection_probability',
    'default_tau_grid',
    'g2',
    'g2_zero_analytic',
    'monitor_ratio'
]
