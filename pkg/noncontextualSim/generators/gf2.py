"""
Linear algebra over GF(2) on uint8 numpy matrices
"""
from typing import List, Optional, Tuple

import numpy as np


def gf2_rref(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(2)

    Returns the reduced matrix and the pivot column of each nonzero row.
    """
    rref = (np.asarray(matrix) % 2).astype(np.uint8)
    m_rows, n_cols = rref.shape
    pivots = []

    row_i = 0
    for col_j in range(n_cols):
        if row_i >= m_rows:
            break
        if not rref[row_i:, col_j].any():
            continue

        k = int(np.argmax(rref[row_i:, col_j])) + row_i
        rref[[k, row_i]] = rref[[row_i, k]]

        # every other row with a one in col_j gets row_i added
        column = rref[:, col_j].copy()
        column[row_i] = 0
        flip = np.outer(column, rref[row_i, col_j:]).astype(np.uint8)
        rref[:, col_j:] = np.bitwise_xor(rref[:, col_j:], flip)

        pivots.append(col_j)
        row_i += 1

    return rref, pivots


def gf2_rank(matrix: np.ndarray) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    return len(gf2_rref(matrix)[1])


def gf2_solve(rows: np.ndarray, target: np.ndarray) -> Optional[np.ndarray]:
    """
    Coefficients c with c·rows = target over GF(2), or None

    ``rows`` is (k, d); the solution is unique when the rows are independent.
    """
    rows = np.asarray(rows, dtype=np.uint8).reshape(-1, len(target))
    k = rows.shape[0]
    if k == 0:
        return np.zeros(0, dtype=np.uint8) if not np.any(target) else None

    augmented = np.concatenate([rows.T, np.asarray(target, dtype=np.uint8).reshape(-1, 1)], axis=1)
    rref, pivots = gf2_rref(augmented)
    if k in pivots:
        return None

    solution = np.zeros(k, dtype=np.uint8)
    for row, col in enumerate(pivots):
        solution[col] = rref[row, k]
    return solution
