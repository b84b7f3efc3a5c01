"""
Dense exact diagonalization of small Pauli Hamiltonians

Basis index b has qubit 0 as its most significant bit, so matrices agree
with the Kronecker product of single-qubit factors in label order.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple
import logging
import math

import numpy as np
from django.conf import settings

from core.exceptions import ConsistencyError, OracleSizeError
from core.utils import cache_result, log_duration
from hamiltonians.models import Hamiltonian
from pauli.models import PauliOp

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-12
DEGENERACY_GAP = 1e-6


@dataclass(frozen=True, eq=False)
class DenseHamiltonian:
    dim: int
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class GroundState:
    energy: float
    vector: np.ndarray
    gap: float

    @property
    def is_degenerate(self) -> bool:
        return self.gap < DEGENERACY_GAP


def _check_size(n: int, max_qubits: int = None):
    limit = settings.NCSIM_ORACLE_MAX_QUBITS if max_qubits is None else max_qubits
    if n > limit:
        raise OracleSizeError(n, limit)


def _index_mask(mask: int, n: int) -> int:
    """Move qubit i from bit i to bit n-1-i"""
    result = 0
    for i in range(n):
        if (mask >> i) & 1:
            result |= 1 << (n - 1 - i)
    return result


def _parity(values: np.ndarray) -> np.ndarray:
    values = values.copy()
    for shift in (16, 8, 4, 2, 1):
        values ^= values >> shift
    return values & 1


def pauli_matrix(op: PauliOp, max_qubits: int = None) -> np.ndarray:
    """P|b⟩ = i^{|x∧z|} (-1)^{z·b} |b ⊕ x⟩"""
    _check_size(op.n, max_qubits)
    dim = 1 << op.n
    x = _index_mask(op.x, op.n)
    z = _index_mask(op.z, op.n)
    basis = np.arange(dim, dtype=np.int64)
    values = (1j ** (op.x & op.z).bit_count()) * (1 - 2 * _parity(basis & z))
    matrix = np.zeros((dim, dim), dtype=complex)
    matrix[basis ^ x, basis] = values
    return matrix


def weighted_matrix(n: int, weighted_ops: Sequence[Tuple[float, PauliOp]], max_qubits: int = None) -> np.ndarray:
    _check_size(n, max_qubits)
    matrix = np.zeros((1 << n, 1 << n), dtype=complex)
    for weight, op in weighted_ops:
        matrix += weight * pauli_matrix(op, max_qubits)
    return matrix


def to_matrix(hamiltonian: Hamiltonian, max_qubits: int = None) -> DenseHamiltonian:
    """Σ h_P P + offset·I as a dense Hermitian matrix"""
    n = hamiltonian.n
    _check_size(n, max_qubits)
    dim = 1 << n
    entries = hamiltonian.identity_offset * np.eye(dim, dtype=complex)
    for term in hamiltonian.terms:
        entries += term.coefficient * pauli_matrix(term.op, max_qubits)
    if not np.allclose(entries, entries.conj().T, rtol=0.0, atol=HERMITIAN_TOLERANCE):
        raise ConsistencyError("assembled matrix is not Hermitian")
    return DenseHamiltonian(dim=dim, entries=entries)


def _eigh(matrix: np.ndarray):
    try:
        return np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise ConsistencyError(f"eigensolver did not converge: {exc}")


@log_duration(threshold=1.0)
def ground_state(hamiltonian: Hamiltonian, max_qubits: int = None) -> GroundState:
    dense = to_matrix(hamiltonian, max_qubits)
    eigenvalues, eigenvectors = _eigh(dense.entries)
    gap = float(eigenvalues[1] - eigenvalues[0]) if dense.dim > 1 else math.inf
    return GroundState(energy=float(eigenvalues[0]), vector=eigenvectors[:, 0], gap=gap)


@cache_result(key_prefix='oracle_ground_energy')
def ground_energy(hamiltonian: Hamiltonian, max_qubits: int = None) -> float:
    """Smallest eigenvalue; memoized per Hamiltonian digest"""
    dense = to_matrix(hamiltonian, max_qubits)
    energy = float(np.linalg.eigvalsh(dense.entries)[0])
    logger.info(f"Exact ground energy for {hamiltonian.n} qubits, {hamiltonian.term_count} terms: {energy!r}")
    return energy


def expectation(state: np.ndarray, op: PauliOp) -> float:
    return float(np.real(np.vdot(state, pauli_matrix(op) @ state)))


def ground_expectations(hamiltonian: Hamiltonian, ops: Sequence[PauliOp], max_qubits: int = None) -> List[float]:
    """
    ⟨ψ|P|ψ⟩ on the computed ground eigenvector

    In a degenerate ground space the eigenvector is an arbitrary member,
    so these values are basis-dependent.
    """
    state = ground_state(hamiltonian, max_qubits)
    if state.is_degenerate:
        logger.warning(f"Ground space is degenerate (gap {state.gap:.3g}); expectations depend on the eigenvector")
    return [expectation(state.vector, op) for op in ops]


def common_eigenstate(n: int, observables: Sequence[np.ndarray], values: Sequence[int]) -> np.ndarray:
    """
    A joint eigenvector of commuting ±1-valued observables

    Built from the product of projectors (I + v·M)/2.
    """
    dim = 1 << n
    projector = np.eye(dim, dtype=complex)
    for matrix, value in zip(observables, values):
        projector = projector @ (0.5 * (np.eye(dim) + value * matrix))
    projector = 0.5 * (projector + projector.conj().T)
    eigenvalues, eigenvectors = _eigh(projector)
    if eigenvalues[-1] < 0.5:
        raise ConsistencyError("observables have no common eigenstate with the requested values")
    return eigenvectors[:, -1]
