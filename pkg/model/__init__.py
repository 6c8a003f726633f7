# Model package initialization
from .errors import (
    BlockadeError,
    InputError,
    ConfigError,
    NumericalError,
    IntegrationError,
    DegenerateSteadyStateError,
    ContractViolationError,
    UndefinedRatioError,
    UndetectablePhotonError
)
from .parameters import SystemParams, DetectorGeometry
from .states import (
    BasisConvention,
    DensityMatrix,
    basis_transform,
    pure_state,
    partial_trace
)

__all__ = [
    'BlockadeError',
    'InputError',
    'ConfigError',
    'NumericalError',
    'IntegrationError',
    'DegenerateSteadyStateError',
    'ContractViolationError',
    'UndefinedRatioError',
    'UndetectablePhotonError',
    'SystemParams',
    'DetectorGeometry',
    'BasisConvention',
    'DensityMatrix',
    'basis_transform',
    'pure_state',
    'partial_trace'
]
