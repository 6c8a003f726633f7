# commands.py
import logging
import os
from typing import Dict, List, Optional

import pandas as pd
from joblib import Parallel, delayed

from main import BlockadeSimulator, steady_point
from model.errors import ConfigError
from model.parameters import SystemParams
from dynamics.evolution import IntegratorConfig
from analysis.correlations import default_tau_grid
from analysis.entanglement import entanglement_window
from .config import FIGURES, ScenarioConfig, build_config
from .export import Dataset, write_dataset, write_report

logger = logging.getLogger('Commands')

EVOLVE_COLUMNS = ('t_gamma', 'P_e', 'P_e_squared', 'P_ee', 'C', 'pop_ee', 'pop_s', 'pop_a', 'pop_gg')


def _simulator(config: ScenarioConfig) -> BlockadeSimulator:
    return BlockadeSimulator(IntegratorConfig(backend=config.backend))


def _base_metadata(config: ScenarioConfig) -> Dict:
    return {
        'omega_over_gamma': config.omega,
        'delta_over_gamma': config.delta,
        'gamma_s_frac': config.gamma_s_frac,
        'config_sha256': config.digest()
    }


def _delta_label(delta: float) -> str:
    return f"{delta:g}"


def cmd_evolve(config: ScenarioConfig) -> Dataset:
    """Trajectory observables from the configured initial state"""
    table = _simulator(config).trajectory_table(
        config.params, config.initial_state, config.t_end, config.samples
    )
    metadata = _base_metadata(config)
    metadata.update({'initial_state': config.initial_state, 't_end_gamma': config.t_end,
                     'backend': config.backend})
    return Dataset('evolve', pd.DataFrame({name: table[name] for name in EVOLVE_COLUMNS}), metadata)


def cmd_steady(config: ScenarioConfig) -> Dict:
    """Steady-state report: both matrices, their distance, ratio, concurrence and window"""
    report = _simulator(config).steady_report(config.params)
    report['config_sha256'] = config.digest()
    return report


def cmd_sweep(config: ScenarioConfig) -> Dataset:
    """Steady-state families over omega, one family per delta"""
    omegas = config.omega_grid()
    deltas = sorted(set(config.deltas))
    if not omegas:
        raise ConfigError("Sweep range is empty")
    points = [
        SystemParams.from_ratios(omega, delta, config.gamma_s_frac)
        for delta in deltas for omega in omegas
    ]
    logger.info(f"Sweeping {len(points)} points with {config.jobs} job(s)")
    results = Parallel(n_jobs=config.jobs)(
        delayed(steady_point)(params, config.source) for params in points
    )
    results.sort(key=lambda row: (row['delta'], row['omega']))

    frame = pd.DataFrame({'omega_gamma': omegas})
    windows = {}
    for delta in deltas:
        rows = [row for row in results if row['delta'] == delta]
        label = _delta_label(delta)
        omega_max = entanglement_window(abs(delta), 1.0)
        windows[label] = omega_max
        if config.quantity in ('ratio', 'both'):
            frame[f'ratio_d{label}'] = [row['ratio'] for row in rows]
        if config.quantity in ('concurrence', 'both'):
            frame[f'C_d{label}'] = [row['concurrence'] for row in rows]
        # 1 on the first omega at or beyond omega_max, where the steady state turns separable
        crossing = [0] * len(omegas)
        if omega_max > 0:
            for index, omega in enumerate(omegas):
                if omega >= omega_max:
                    crossing[index] = 1
                    break
        frame[f'cross_d{label}'] = crossing

    metadata = {
        'quantity': config.quantity,
        'source': config.source,
        'gamma_s_frac': config.gamma_s_frac,
        'deltas_over_gamma': deltas,
        'omega_max_over_gamma': windows,
        'config_sha256': config.digest()
    }
    return Dataset('sweep', frame, metadata)


def cmd_g2(config: ScenarioConfig) -> Dataset:
    """g2(tau) at the configured detector phases"""
    taus = default_tau_grid(config.tau_max, config.tau_points)
    curve = _simulator(config).correlation_curve(config.params, config.geometry, taus)
    metadata = _base_metadata(config)
    metadata.update({
        'phi1': config.phi1,
        'phi2': config.phi2,
        'g2_zero_analytic': curve['g2_zero_analytic']
    })
    frame = pd.DataFrame({'tau_gamma': curve['tau_gamma'], 'g2': curve['g2']})
    return Dataset('g2', frame, metadata)


COMMANDS = {
    'evolve': cmd_evolve,
    'sweep': cmd_sweep,
    'g2': cmd_g2,
}


def cmd_figures(figure: str, config_path: Optional[str] = None,
                flags: Optional[Dict] = None) -> List[Dataset]:
    """Datasets behind one figure, one per panel preset; config file and flags still apply"""
    if figure not in FIGURES:
        raise ConfigError(f"Unknown figure '{figure}' (available: {', '.join(sorted(FIGURES))})")
    command, panels = FIGURES[figure]
    datasets = []
    for panel in panels:
        dataset = COMMANDS[command](build_config(panel, config_path, flags))
        dataset.name = panel
        datasets.append(dataset)
    return datasets


def write_figures(datasets: List[Dataset], directory: Optional[str], fmt: str) -> List[str]:
    directory = directory or 'figures'
    paths = []
    for dataset in datasets:
        path = os.path.join(directory, f"{dataset.name}.{fmt}")
        write_dataset(dataset, path, fmt)
        paths.append(path)
    return paths


def emit(result, config: ScenarioConfig) -> None:
    if isinstance(result, Dataset):
        write_dataset(result, config.out, config.format)
    else:
        write_report(result, config.out)
