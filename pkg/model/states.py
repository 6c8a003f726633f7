# states.py
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np

from .errors import InputError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = -1e-10


class BasisConvention(str, Enum):
    """Two-atom basis conventions and their fixed orderings"""
    DICKE = 'Dicke'
    PRODUCT = 'Product'

    @property
    def labels(self) -> Tuple[str, ...]:
        return BASIS_LABELS[self]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(
                f"'{label}' is not a {self.value} basis label (expected one of {self.labels})"
            )


BASIS_LABELS = {
    BasisConvention.DICKE: ('ee', 's', 'a', 'gg'),
    BasisConvention.PRODUCT: ('ee', 'eg', 'ge', 'gg'),
}

# Columns are the Dicke states (ee, s, a, gg) written in product coordinates (ee, eg, ge, gg).
_R = 1 / math.sqrt(2)
DICKE_TO_PRODUCT = np.array([
    [1, 0, 0, 0],
    [0, _R, _R, 0],
    [0, _R, -_R, 0],
    [0, 0, 0, 1],
], dtype=complex)

# Atom exchange |eg> <-> |ge>.
SWAP = {
    BasisConvention.PRODUCT: np.array([
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ], dtype=complex),
    BasisConvention.DICKE: np.diag([1, 1, -1, 1]).astype(complex),
}


def transform_operator(matrix: np.ndarray, source: BasisConvention,
                       target: BasisConvention) -> np.ndarray:
    """Express a 4x4 operator given in `source` in the `target` basis"""
    matrix = np.asarray(matrix, dtype=complex)
    if source == target:
        return matrix.copy()
    if source == BasisConvention.DICKE:
        return DICKE_TO_PRODUCT @ matrix @ DICKE_TO_PRODUCT.conj().T
    return DICKE_TO_PRODUCT.conj().T @ matrix @ DICKE_TO_PRODUCT


def check_density_entries(entries: np.ndarray, positivity_tol: float = POSITIVITY_TOL) -> None:
    """Raise InputError unless entries form a 4x4 Hermitian unit-trace positive matrix"""
    if entries.shape != (4, 4):
        raise InputError(f"Density matrix must be 4x4, got shape {entries.shape}")
    if not np.all(np.isfinite(entries)):
        raise InputError("Density matrix has non-finite entries")

    hermiticity = np.max(np.abs(entries - entries.conj().T))
    if hermiticity > HERMITIAN_TOL:
        raise InputError(f"Density matrix is not Hermitian (deviation {hermiticity:.3e})")

    trace = np.trace(entries)
    if abs(trace - 1) > TRACE_TOL:
        raise InputError(f"Density matrix trace is {trace.real:.15g}, expected 1")

    smallest = np.linalg.eigvalsh(0.5 * (entries + entries.conj().T))[0]
    if smallest < positivity_tol:
        raise InputError(f"Density matrix has negative eigenvalue {smallest:.3e}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Immutable two-atom density matrix tagged with its basis"""
    entries: np.ndarray
    basis: BasisConvention = BasisConvention.DICKE
    positivity_tol: float = field(default=POSITIVITY_TOL, repr=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        check_density_entries(entries, self.positivity_tol)
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)
        object.__setattr__(self, 'basis', BasisConvention(self.basis))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, basis: BasisConvention = BasisConvention.DICKE,
                    positivity_tol: float = POSITIVITY_TOL) -> Tuple['DensityMatrix', float]:
        """Re-Hermitize and trace-normalize a raw matrix.

        Returns the state and the absolute trace deviation that was removed.
        """
        matrix = np.asarray(matrix, dtype=complex)
        hermitian = 0.5 * (matrix + matrix.conj().T)
        trace = np.trace(hermitian).real
        if trace <= 0:
            raise InputError(f"Cannot normalize a matrix with trace {trace:.3e}")
        return cls(hermitian / trace, basis, positivity_tol), abs(trace - 1.0)

    def element(self, row: str, column: str) -> complex:
        return complex(self.entries[self.basis.index(row), self.basis.index(column)])

    def population(self, label: str) -> float:
        return self.element(label, label).real

    def is_exchange_symmetric(self, tol: float = 1e-10) -> bool:
        swap = SWAP[self.basis]
        return bool(np.max(np.abs(swap @ self.entries @ swap - self.entries)) <= tol)

    def distance(self, other: 'DensityMatrix') -> float:
        """Frobenius distance, computed in this state's basis"""
        other = basis_transform(other, self.basis)
        return float(np.linalg.norm(self.entries - other.entries))

    def to_dict(self) -> Dict:
        return {
            'basis': self.basis.value,
            'labels': list(self.basis.labels),
            'real': self.entries.real.tolist(),
            'imag': self.entries.imag.tolist()
        }


StateLike = Union[DensityMatrix, np.ndarray]


def basis_transform(rho: DensityMatrix, target: BasisConvention) -> DensityMatrix:
    """Express rho in the target basis"""
    target = BasisConvention(target)
    if rho.basis == target:
        return rho
    return DensityMatrix(
        transform_operator(rho.entries, rho.basis, target),
        target,
        rho.positivity_tol
    )


def pure_state(label: str, basis: BasisConvention = BasisConvention.DICKE) -> DensityMatrix:
    """Projector onto one of the four basis states"""
    basis = BasisConvention(basis)
    entries = np.zeros((4, 4), dtype=complex)
    index = basis.index(label)
    entries[index, index] = 1.0
    return DensityMatrix(entries, basis)


def partial_trace(rho: DensityMatrix, kept_atom: int) -> np.ndarray:
    """Reduced 2x2 state of atom 1 or 2, ordered (e, g)"""
    if kept_atom not in (1, 2):
        raise InputError(f"kept_atom must be 1 or 2, got {kept_atom}")
    product = basis_transform(rho, BasisConvention.PRODUCT).entries
    tensor = product.reshape(2, 2, 2, 2)
    if kept_atom == 1:
        return np.einsum('ijkj->ik', tensor)
    return np.einsum('jijk->ik', tensor)


def as_dicke_array(rho: StateLike) -> np.ndarray:
    """Dicke-basis entries of a DensityMatrix; raw arrays are taken as Dicke already"""
    if isinstance(rho, DensityMatrix):
        return basis_transform(rho, BasisConvention.DICKE).entries
    matrix = np.asarray(rho, dtype=complex)
    if matrix.shape != (4, 4):
        raise InputError(f"Expected a 4x4 matrix, got shape {matrix.shape}")
    return matrix
