# errors.py
from typing import Optional, Sequence


class BlockadeError(Exception):
    """Base class for all simulator errors"""


class InputError(BlockadeError, ValueError):
    """Invalid parameters, labels or sample grids"""


class ConfigError(InputError):
    """Invalid scenario configuration"""


class NumericalError(BlockadeError, RuntimeError):
    """A numerical procedure could not produce a trustworthy result"""


class IntegrationError(NumericalError):
    """The time integrator stopped before reaching the requested time"""
    def __init__(self, message: str, time_reached: Optional[float] = None):
        super().__init__(message)
        self.time_reached = time_reached


class DegenerateSteadyStateError(NumericalError):
    """The generator kernel is not one-dimensional"""
    def __init__(self, message: str, singular_values: Sequence[float] = ()):
        super().__init__(message)
        self.singular_values = tuple(float(s) for s in singular_values)


class ContractViolationError(NumericalError):
    """An input broke a precondition the caller was responsible for"""


class UndefinedRatioError(NumericalError):
    """A ratio of two vanishing quantities was requested"""


class UndetectablePhotonError(NumericalError):
    """The first detector has zero probability of a click"""
