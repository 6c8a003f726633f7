# app.py
import logging
import os
import sys
from typing import Optional

from flask import Flask, jsonify, request

# Add the parent directory to Python path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from main import BlockadeSimulator
from model.errors import InputError, NumericalError
from model.parameters import DetectorGeometry, SystemParams
from analysis.correlations import DEFAULT_TAU_MAX, DEFAULT_TAU_POINTS, default_tau_grid
from analysis.entanglement import entanglement_window
from cli.config import PRESETS
from cli.export import to_plain

app = Flask(__name__)

simulator = BlockadeSimulator()
logger = logging.getLogger('WebApp')


def _number(name: str, default: Optional[float] = None) -> float:
    raw = request.args.get(name)
    if raw is None:
        if default is None:
            raise InputError(f"Missing query parameter '{name}'")
        return default
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"Query parameter '{name}' must be a number, got '{raw}'")


def _params() -> SystemParams:
    return SystemParams.from_ratios(
        _number('omega'), _number('delta'), _number('gamma_s_frac', 1.0)
    )


@app.route('/api/steady')
def api_steady():
    """Steady-state report for one parameter point"""
    try:
        report = simulator.steady_report(_params())
        return jsonify(to_plain(report))
    except Exception as e:
        logger.error(f"Error in steady state API: {str(e)}")
        raise


@app.route('/api/g2')
def api_g2():
    """Second-order correlation curve at the requested detector phases"""
    try:
        geometry = DetectorGeometry(_number('phi1', 0.0), _number('phi2', 0.0))
        tau_points = int(_number('tau_points', float(DEFAULT_TAU_POINTS)))
        if tau_points < 2:
            raise InputError(f"tau_points must be at least 2, got {tau_points}")
        taus = default_tau_grid(_number('tau_max', DEFAULT_TAU_MAX), tau_points)
        curve = simulator.correlation_curve(_params(), geometry, taus)
        return jsonify(to_plain(curve))
    except Exception as e:
        logger.error(f"Error in correlation API: {str(e)}")
        raise


@app.route('/api/window')
def api_window():
    """Largest drive that still leaves the steady state entangled"""
    try:
        delta = _number('delta')
        return jsonify(to_plain({'delta': delta, 'omega_max': entanglement_window(delta, 1.0)}))
    except Exception as e:
        logger.error(f"Error in window API: {str(e)}")
        raise


@app.route('/api/presets')
def api_presets():
    return jsonify(to_plain(PRESETS))


# Error handlers
@app.errorhandler(InputError)
def input_error(error):
    return jsonify({'error': str(error)}), 400


@app.errorhandler(NumericalError)
def numerical_error(error):
    return jsonify({'error': str(error)}), 422


@app.errorhandler(404)
def not_found_error(error):
    return jsonify({'error': 'Not found'}), 404


if __name__ == '__main__':
    app.run(debug=True)
