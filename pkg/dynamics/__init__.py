# Dynamics package initialization
from .liouville import (
    Superoperator,
    build_hamiltonian,
    apply_generator,
    build_superoperator
)
from .evolution import IntegratorConfig, Trajectory, evolve, evolve_matrix, propagate
from .steady import alpha, steady_state_analytic, steady_state_numeric

__all__ = [
    'Superoperator',
    'build_hamiltonian',
    'apply_generator',
    'build_superoperator',
    'IntegratorConfig',
    'Trajectory',
    'evolve',
    'evolve_matrix',
    'propagate',
    'alpha',
    'steady_state_analytic',
    'steady_state_numeric'
]
