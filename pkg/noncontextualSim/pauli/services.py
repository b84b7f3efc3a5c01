"""
Exact Pauli algebra: parsing, commutation and phase-tracked products
"""
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from core.exceptions import DimensionMismatchError, PauliParseError
from pauli.models import LETTER_BITS, PauliOp, Phase


def parse_pauli(label: str) -> PauliOp:
    """
    Parse a label such as ``'ZZI'`` into a PauliOp

    Errors report 1-based character positions.
    """
    if not label:
        raise PauliParseError()
    x = z = 0
    for i, letter in enumerate(label):
        bits = LETTER_BITS.get(letter)
        if bits is None:
            raise PauliParseError(position=i + 1, label=label)
        x |= bits[0] << i
        z |= bits[1] << i
    return PauliOp(len(label), x, z)


def _check_same_size(p: PauliOp, q: PauliOp):
    if p.n != q.n:
        raise DimensionMismatchError(p.n, q.n)


def commutes(p: PauliOp, q: PauliOp) -> bool:
    """True iff the symplectic inner product of p and q vanishes"""
    _check_same_size(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


def multiply(p: PauliOp, q: PauliOp) -> Tuple[Phase, PauliOp]:
    """
    Return (phase, r) with p·q = phase·r

    Each string is i^{x·z} X^x Z^z, so moving Z^{z_p} past X^{x_q} costs
    (-1)^{z_p·x_q} and the Y factors of the result are paid back.
    """
    _check_same_size(p, q)
    x = p.x ^ q.x
    z = p.z ^ q.z
    exponent = (
        (p.x & p.z).bit_count()
        + (q.x & q.z).bit_count()
        + 2 * (p.z & q.x).bit_count()
        - (x & z).bit_count()
    )
    return Phase(exponent), PauliOp(p.n, x, z)


def multiply_all(ops: Iterable[PauliOp], n: int) -> Tuple[Phase, PauliOp]:
    """Ordered product of ``ops``; the empty product is the identity on n qubits"""
    phase = Phase()
    result = PauliOp.identity(n)
    for op in ops:
        step, result = multiply(result, op)
        phase = phase * step
    return phase, result


def is_diagonal(p: PauliOp) -> bool:
    return p.x == 0


def canonical_order(ops: Iterable[PauliOp]) -> List[PauliOp]:
    """Lexicographic on labels, I < X < Y < Z"""
    return sorted(ops, key=lambda op: op.label)


def symplectic_matrix(ops: Sequence[PauliOp], n: int = None) -> np.ndarray:
    """Rows ``[x_0..x_{n-1} | z_0..z_{n-1}]`` as uint8"""
    if n is None:
        n = ops[0].n if ops else 0
    matrix = np.zeros((len(ops), 2 * n), dtype=np.uint8)
    shifts = np.arange(n, dtype=np.int64)
    for row, op in enumerate(ops):
        if op.n != n:
            raise DimensionMismatchError(n, op.n)
        matrix[row, :n] = (op.x >> shifts) & 1
        matrix[row, n:] = (op.z >> shifts) & 1
    return matrix


def commutation_matrix(ops: Sequence[PauliOp]) -> np.ndarray:
    """Boolean matrix, True where the two operators commute"""
    if not ops:
        return np.ones((0, 0), dtype=bool)
    n = ops[0].n
    sym = symplectic_matrix(ops, n).astype(np.int64)
    xs, zs = sym[:, :n], sym[:, n:]
    form = (xs @ zs.T + zs @ xs.T) % 2
    return form == 0
