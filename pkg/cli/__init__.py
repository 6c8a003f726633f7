# CLI package initialization
from .config import ScenarioConfig, PRESETS, build_config
from .commands import cmd_evolve, cmd_steady, cmd_sweep, cmd_g2, cmd_figures
from .export import Dataset

__all__ = [
    'ScenarioConfig',
    'PRESETS',
    'build_config',
    'cmd_evolve',
    'cmd_steady',
    'cmd_sweep',
    'cmd_g2',
    'cmd_figures',
    'Dataset'
]
