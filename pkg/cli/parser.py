# parser.py
import argparse
import logging
from typing import Dict, List, Optional

from model.errors import InputError, NumericalError, UndetectablePhotonError
from .commands import COMMANDS, cmd_figures, cmd_steady, emit, write_figures
from .config import FIGURES, PRESETS, build_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

logger = logging.getLogger('CLI')

# Flags that map onto ScenarioConfig fields.
SCENARIO_FLAGS = (
    'omega', 'delta', 'gamma_s_frac', 'initial_state', 't_end', 'samples', 'backend',
    'phi1', 'phi2', 'tau_max', 'tau_points', 'omega_min', 'omega_max', 'omega_step',
    'deltas', 'quantity', 'source', 'out', 'format', 'jobs'
)


def _add_verbose_flag(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand from resetting a --verbose given before it
    parser.add_argument('--verbose', action='store_true', default=argparse.SUPPRESS, help="Debug logging")


def _add_scenario_flags(parser: argparse.ArgumentParser, with_preset: bool = True) -> None:
    _add_verbose_flag(parser)
    group = parser.add_argument_group('scenario')
    group.add_argument('--config', help="Flat 'key = value' configuration file")
    if with_preset:
        group.add_argument('--preset', choices=sorted(PRESETS), help="Start from a named preset")
    group.add_argument('--omega', type=float, help="Drive strength omega/gamma")
    group.add_argument('--delta', type=float, help="Blockade shift delta/gamma")
    group.add_argument('--gamma-s-frac', type=float, help="Radiative share gamma_s/gamma in [0, 1]")
    group.add_argument('--initial-state', choices=('gg', 'ee', 's', 'a'))
    group.add_argument('--t-end', type=float, help="Final time gamma*t")
    group.add_argument('--samples', type=int, help="Number of trajectory samples")
    group.add_argument('--backend', choices=('rk45', 'expm'), help="Evolution backend")
    group.add_argument('--phi1', type=float, help="First detector phase (rad)")
    group.add_argument('--phi2', type=float, help="Second detector phase (rad)")
    group.add_argument('--tau-max', type=float, help="Largest delay gamma*tau")
    group.add_argument('--tau-points', type=int, help="Number of delays")
    group.add_argument('--omega-min', type=float)
    group.add_argument('--omega-max', type=float)
    group.add_argument('--omega-step', type=float)
    group.add_argument('--deltas', help="Comma-separated delta/gamma values for sweeps")
    group.add_argument('--quantity', choices=('ratio', 'concurrence', 'both'))
    group.add_argument('--source', choices=('analytic', 'numeric'))
    group.add_argument('--out', help="Output file (directory for 'figures')")
    group.add_argument('--format', choices=('csv', 'json'))
    group.add_argument('--jobs', type=int, help="Worker processes for sweeps (-1: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='run.py',
        description="Two-atom dipole blockade simulator: dynamics, steady state, "
                    "entanglement and photon correlations."
    )
    parser.add_argument('--verbose', action='store_true', help="Debug logging")
    subparsers = parser.add_subparsers(dest='command', required=True)

    for name, help_text in (
        ('evolve', "Time evolution of populations and concurrence"),
        ('steady', "Steady-state report (JSON)"),
        ('sweep', "Steady-state families over omega for several delta"),
        ('g2', "Photon-photon correlation g2(tau)"),
    ):
        _add_scenario_flags(subparsers.add_parser(name, help=help_text))

    figures = subparsers.add_parser('figures', help="Datasets for one figure, one file per panel")
    figures.add_argument('figure', choices=sorted(FIGURES))
    # panels choose their own presets
    _add_scenario_flags(figures, with_preset=False)

    serve = subparsers.add_parser('serve', help="Serve the JSON API")
    _add_verbose_flag(serve)
    serve.add_argument('--host', default='127.0.0.1')
    serve.add_argument('--port', type=int, default=5000)
    return parser


def _flags(args: argparse.Namespace) -> Dict:
    return {name: getattr(args, name, None) for name in SCENARIO_FLAGS}


def run_command(args: argparse.Namespace) -> int:
    if args.command == 'serve':
        from web.app import app
        app.run(host=args.host, port=args.port)
        return EXIT_OK

    flags = _flags(args)
    if args.command == 'figures':
        config = build_config(None, args.config, flags)
        datasets = cmd_figures(args.figure, args.config, flags)
        for path in write_figures(datasets, config.out, config.format):
            logger.info(f"Wrote {path}")
        return EXIT_OK

    config = build_config(args.preset, args.config, flags)
    if args.command == 'steady':
        result = cmd_steady(config)
    else:
        result = COMMANDS[args.command](config)
    emit(result, config)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and map failures onto exit codes"""
    args = build_parser().parse_args(argv)
    try:
        return run_command(args)
    except (InputError, OSError) as e:
        logger.error(f"Configuration error: {str(e)}")
        return EXIT_CONFIG
    except UndetectablePhotonError as e:
        logger.error(f"Numerical failure: {str(e)}. Correlations need a driven system: use a non-zero --omega.")
        return EXIT_NUMERICAL
    except NumericalError as e:
        logger.error(f"Numerical failure: {str(e)}")
        return EXIT_NUMERICAL
