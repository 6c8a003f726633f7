# liouville.py
"""
Generator of the two-atom master equation.

    d(rho)/dt = -i[H, rho] - gamma * sum_i (S+_i S-_i rho + rho S+_i S-_i - 2 S-_i rho S+_i)

with hbar = 1 and the drive phases k_L.x1 = k_L.x2 = 0. Operators are returned
in the Dicke basis (ee, s, a, gg). Density matrices are vectorized by column
stacking, so vec(A X B) = (B^T kron A) vec(X).
"""
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from model.parameters import SystemParams
from model.states import BasisConvention, StateLike, as_dicke_array, transform_operator

# Single-atom lowering operator |g><e| in the (e, g) ordering.
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)


def vectorize(matrix: np.ndarray) -> np.ndarray:
    """Column-stack a 4x4 matrix into a length-16 vector"""
    return np.asarray(matrix, dtype=complex).reshape(-1, order='F')


def unvectorize(vector: np.ndarray) -> np.ndarray:
    """Inverse of vectorize"""
    return np.asarray(vector, dtype=complex).reshape(4, 4, order='F')


def lowering_operators(basis: BasisConvention = BasisConvention.DICKE) -> Tuple[np.ndarray, np.ndarray]:
    """S-_1 and S-_2, built in the product basis and expressed in `basis`"""
    s1 = np.kron(SIGMA_MINUS, IDENTITY_2)
    s2 = np.kron(IDENTITY_2, SIGMA_MINUS)
    return (
        transform_operator(s1, BasisConvention.PRODUCT, basis),
        transform_operator(s2, BasisConvention.PRODUCT, basis)
    )


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """H = delta|ee><ee| + sqrt(2) omega (|ee><s| + |s><gg| + h.c.) in the Dicke basis"""
    coupling = math.sqrt(2) * params.omega
    hamiltonian = np.zeros((4, 4), dtype=complex)
    hamiltonian[0, 0] = params.delta
    hamiltonian[0, 1] = hamiltonian[1, 0] = coupling
    hamiltonian[1, 3] = hamiltonian[3, 1] = coupling
    return hamiltonian


def apply_generator(params: SystemParams, rho: StateLike) -> np.ndarray:
    """Instantaneous derivative d(rho)/dt in the Dicke basis"""
    rho = as_dicke_array(rho)
    hamiltonian = build_hamiltonian(params)
    derivative = -1j * (hamiltonian @ rho - rho @ hamiltonian)
    for lowering in lowering_operators():
        raising = lowering.conj().T
        number = raising @ lowering
        derivative -= params.gamma * (
            number @ rho + rho @ number - 2 * lowering @ rho @ raising
        )
    return derivative


@dataclass(frozen=True, eq=False)
class Superoperator:
    """16x16 generator acting on column-stacked density matrices"""
    entries: np.ndarray
    basis: BasisConvention = BasisConvention.DICKE
    vectorization: str = field(default='column', init=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        return unvectorize(self.entries @ vectorize(matrix))


def build_superoperator(params: SystemParams) -> Superoperator:
    """Matrix form of apply_generator"""
    hamiltonian = build_hamiltonian(params)
    generator = -1j * (np.kron(IDENTITY_4, hamiltonian) - np.kron(hamiltonian.T, IDENTITY_4))
    for lowering in lowering_operators():
        raising = lowering.conj().T
        number = raising @ lowering
        generator -= params.gamma * (
            np.kron(IDENTITY_4, number)
            + np.kron(number.T, IDENTITY_4)
            - 2 * np.kron(raising.T, lowering)
        )
    return Superoperator(generator)
