# parameters.py
import math
from dataclasses import dataclass, replace
from typing import Dict, Sequence

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs of the driven atom pair.

    All four values are rates in units of a common reference rate. The laser
    Rabi frequency is 2*omega and the single-atom radiative rate is 2*gamma_s.
    """
    omega: float
    delta: float
    gamma_s: float = 1.0
    gamma_d: float = 0.0

    def __post_init__(self):
        for name in ('omega', 'delta', 'gamma_s', 'gamma_d'):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InputError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise InputError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

        if self.gamma_s < 0 or self.gamma_d < 0:
            raise InputError(
                f"Decay rates must be non-negative (gamma_s={self.gamma_s}, gamma_d={self.gamma_d})"
            )
        if self.gamma_s + self.gamma_d <= 0:
            raise InputError("gamma_s + gamma_d must be strictly positive")

    @property
    def gamma(self) -> float:
        """Total half-rate gamma = gamma_s + gamma_d"""
        return self.gamma_s + self.gamma_d

    @classmethod
    def from_ratios(cls, omega: float, delta: float, gamma_s_frac: float = 1.0,
                    gamma: float = 1.0) -> 'SystemParams':
        """Build parameters from the dimensionless ratios omega/gamma, delta/gamma and gamma_s/gamma"""
        if not 0.0 <= gamma_s_frac <= 1.0:
            raise InputError(f"gamma_s/gamma must lie in [0, 1], got {gamma_s_frac}")
        if gamma <= 0:
            raise InputError(f"Reference rate must be positive, got {gamma}")
        return cls(
            omega=omega * gamma,
            delta=delta * gamma,
            gamma_s=gamma_s_frac * gamma,
            gamma_d=(1.0 - gamma_s_frac) * gamma
        )

    def with_omega(self, omega: float) -> 'SystemParams':
        return replace(self, omega=omega)

    def with_delta(self, delta: float) -> 'SystemParams':
        return replace(self, delta=delta)

    def to_dict(self) -> Dict:
        """Convert parameters to dictionary, ratios included"""
        return {
            'omega': self.omega,
            'delta': self.delta,
            'gamma_s': self.gamma_s,
            'gamma_d': self.gamma_d,
            'gamma': self.gamma,
            'omega_over_gamma': self.omega / self.gamma,
            'delta_over_gamma': self.delta / self.gamma,
            'gamma_s_frac': self.gamma_s / self.gamma
        }


@dataclass(frozen=True)
class DetectorGeometry:
    """Detector phases phi1, phi2 in radians.

    The atomic positions only enter through phi(r) = k_L r.(x1 - x2).
    """
    phi1: float
    phi2: float

    def __post_init__(self):
        for name in ('phi1', 'phi2'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InputError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def symmetric(cls, phi: float) -> 'DetectorGeometry':
        """Both detectors at the same phase"""
        return cls(phi, phi)

    @classmethod
    def in_phase(cls) -> 'DetectorGeometry':
        return cls.symmetric(0.0)

    @classmethod
    def anti_phase(cls) -> 'DetectorGeometry':
        return cls.symmetric(math.pi)

    @classmethod
    def quadrature(cls) -> 'DetectorGeometry':
        """phi1 = phi2 = pi/2, where g2(0) equals the blockade ratio"""
        return cls.symmetric(math.pi / 2)

    @classmethod
    def from_positions(cls, direction1: Sequence[float], direction2: Sequence[float],
                       separation: Sequence[float]) -> 'DetectorGeometry':
        """Phases from detector directions and the atom separation x1 - x2 in wavelengths"""
        separation = np.asarray(separation, dtype=float)
        phases = []
        for direction in (direction1, direction2):
            direction = np.asarray(direction, dtype=float)
            if direction.shape != separation.shape:
                raise InputError("Detector direction and separation must have the same dimension")
            norm = np.linalg.norm(direction)
            if norm == 0:
                raise InputError("Detector direction must be non-zero")
            phases.append(2 * math.pi * float(np.dot(direction / norm, separation)))
        return cls(*phases)

    def reduced(self) -> 'DetectorGeometry':
        """Same geometry with both phases reduced to [0, 2pi)"""
        return DetectorGeometry(self.phi1 % (2 * math.pi), self.phi2 % (2 * math.pi))

    def to_dict(self) -> Dict:
        return {'phi1': self.phi1, 'phi2': self.phi2}
