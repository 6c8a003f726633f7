# config.py
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Dict, List, Optional, Tuple

from model.errors import ConfigError, InputError
from model.parameters import DetectorGeometry, SystemParams

INITIAL_STATES = ('gg', 'ee', 's', 'a')
FORMATS = ('csv', 'json')
QUANTITIES = ('ratio', 'concurrence', 'both')
SOURCES = ('analytic', 'numeric')
BACKENDS = ('rk45', 'expm')

CASE_A = {'omega': 5.0, 'delta': 5.0}
CASE_B = {'omega': 5.0, 'delta': 30.0}
CASE_C = {'omega': 15.0, 'delta': 30.0}

FIGURE_EVOLUTION = {'t_end': 10.0, 'samples': 401, 'initial_state': 'gg'}
FIGURE_SWEEP = {'omega_min': 0.1, 'omega_max': 15.0, 'omega_step': 0.1}
FIGURE_CORRELATION = {'phi1': 0.0, 'phi2': 0.0, 'gamma_s_frac': 1.0}

PRESETS: Dict[str, Dict] = {
    'fig1a': {**CASE_A, **FIGURE_EVOLUTION},
    'fig1b': {**CASE_B, **FIGURE_EVOLUTION},
    'fig1c': {**CASE_C, **FIGURE_EVOLUTION},
    'fig2a': {**CASE_A, **FIGURE_EVOLUTION},
    'fig2b': {**CASE_B, **FIGURE_EVOLUTION},
    'fig2c': {**CASE_C, **FIGURE_EVOLUTION},
    'fig3': {**FIGURE_SWEEP, 'deltas': [float(d) for d in range(0, 11)], 'quantity': 'ratio'},
    'fig4': {**FIGURE_SWEEP, 'deltas': [float(d) for d in range(1, 11)], 'quantity': 'concurrence'},
    'fig5a': {**CASE_A, **FIGURE_CORRELATION},
    'fig5b': {**CASE_B, **FIGURE_CORRELATION},
    'fig5c': {**CASE_C, **FIGURE_CORRELATION},
    'monitor_b': {**CASE_B, 'gamma_s_frac': 1.0, 'phi1': math.pi / 2, 'phi2': math.pi / 2},
}

FIGURES: Dict[str, Tuple[str, Tuple[str, ...]]] = {
    'fig1': ('evolve', ('fig1a', 'fig1b', 'fig1c')),
    'fig2': ('evolve', ('fig2a', 'fig2b', 'fig2c')),
    'fig3': ('sweep', ('fig3',)),
    'fig4': ('sweep', ('fig4',)),
    'fig5': ('g2', ('fig5a', 'fig5b', 'fig5c')),
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Every tunable of a run; rates are ratios to gamma and times are gamma*t"""
    omega: float = 5.0
    delta: float = 30.0
    gamma_s_frac: float = 1.0
    initial_state: str = 'gg'
    t_end: float = 10.0
    samples: int = 401
    backend: str = 'rk45'
    phi1: float = 0.0
    phi2: float = 0.0
    tau_max: float = 10.0
    tau_points: int = 200
    omega_min: float = 0.1
    omega_max: float = 15.0
    omega_step: float = 0.1
    deltas: List[float] = field(default_factory=lambda: [float(d) for d in range(0, 11)])
    quantity: str = 'both'
    source: str = 'analytic'
    out: Optional[str] = None
    format: str = 'csv'
    jobs: int = 1

    def validate(self) -> 'ScenarioConfig':
        """Raise ConfigError unless every value is usable"""
        for name in ('omega', 'delta', 'gamma_s_frac', 't_end', 'phi1', 'phi2', 'tau_max',
                     'omega_min', 'omega_max', 'omega_step'):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if self.samples < 2:
            raise ConfigError(f"samples must be at least 2, got {self.samples}")
        if self.t_end <= 0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if not 0.0 <= self.gamma_s_frac <= 1.0:
            raise ConfigError(f"gamma_s_frac must lie in [0, 1], got {self.gamma_s_frac}")
        if self.initial_state not in INITIAL_STATES:
            raise ConfigError(
                f"initial_state must be one of {INITIAL_STATES}, got '{self.initial_state}'"
            )
        if self.tau_max <= 0 or self.tau_points < 2:
            raise ConfigError("tau_max must be positive and tau_points at least 2")
        if self.omega_step <= 0 or self.omega_min <= 0 or self.omega_max < self.omega_min:
            raise ConfigError(
                "Sweep range needs 0 < omega_min <= omega_max and a positive omega_step"
            )
        if not self.deltas:
            raise ConfigError("At least one delta value is required for a sweep")
        for name, allowed in (('format', FORMATS), ('quantity', QUANTITIES),
                              ('source', SOURCES), ('backend', BACKENDS)):
            if getattr(self, name) not in allowed:
                raise ConfigError(f"{name} must be one of {allowed}, got '{getattr(self, name)}'")
        if self.jobs == 0 or self.jobs < -1:
            raise ConfigError(f"jobs must be a positive count or -1, got {self.jobs}")
        return self

    @property
    def params(self) -> SystemParams:
        try:
            return SystemParams.from_ratios(self.omega, self.delta, self.gamma_s_frac)
        except InputError as e:
            raise ConfigError(str(e))

    @property
    def geometry(self) -> DetectorGeometry:
        return DetectorGeometry(self.phi1, self.phi2)

    def omega_grid(self) -> List[float]:
        """Sweep abscissae omega_min, omega_min + step, ... up to omega_max"""
        count = int(math.floor((self.omega_max - self.omega_min) / self.omega_step + 1e-9)) + 1
        return [round(self.omega_min + i * self.omega_step, 12) for i in range(count)]

    def merged(self, overrides: Dict) -> 'ScenarioConfig':
        """New config with the given keys replaced (values are coerced, unknown keys rejected)"""
        return replace(self, **coerce_values(overrides))

    def to_dict(self) -> Dict:
        return asdict(self)

    def digest(self) -> str:
        """SHA-256 of the configuration, independent of output location"""
        payload = {k: v for k, v in self.to_dict().items() if k not in ('out', 'format', 'jobs')}
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}


def _coerce(name: str, value):
    kind = _FIELD_TYPES[name]
    try:
        if name == 'deltas':
            if isinstance(value, str):
                value = [item for item in value.replace(' ', '').split(',') if item]
            return [float(item) for item in value]
        if kind is float:
            return float(value)
        if kind is int:
            return int(value)
        if name == 'out':
            return None if value in (None, '') else str(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f"Invalid value for {name}: {value!r}")


def coerce_values(values: Dict) -> Dict:
    coerced = {}
    for key, value in values.items():
        name = key.replace('-', '_')
        if name not in _FIELD_TYPES:
            raise ConfigError(f"Unknown configuration key '{key}'")
        coerced[name] = _coerce(name, value)
    return coerced


def preset_overrides(name: str) -> Dict:
    if name not in PRESETS:
        raise ConfigError(f"Unknown preset '{name}' (available: {', '.join(sorted(PRESETS))})")
    return dict(PRESETS[name])


def parse_config_text(text: str, source: str = '<config>') -> Dict:
    """Parse flat 'key = value' lines; '#' starts a comment"""
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{source}:{number}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split('=', 1))
        if not key:
            raise ConfigError(f"{source}:{number}: missing key")
        values[key] = value
    return coerce_values(values)


def load_config_file(path: str) -> Dict:
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return parse_config_text(handle.read(), path)
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e.strerror}")


def build_config(preset: Optional[str] = None, config_path: Optional[str] = None,
                 flags: Optional[Dict] = None) -> ScenarioConfig:
    """Defaults, then preset, then config file, then explicit flags"""
    config = ScenarioConfig()
    if preset:
        config = config.merged(preset_overrides(preset))
    if config_path:
        config = config.merged(load_config_file(config_path))
    if flags:
        config = config.merged({k: v for k, v in flags.items() if v is not None})
    return config.validate()
