"""GF(2) linear algebra helpers"""

from dataclasses import dataclass
from typing import Optional

import numpy as np


def to_gf2(matrix) -> np.ndarray:
    return np.array(matrix, dtype=np.uint8) % 2


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]
    transform: np.ndarray


def row_reduce(matrix) -> RowReduceResult:
    """Reduced row echelon form over GF(2).

    ``transform`` records the row operations: transform @ matrix == reduced (mod 2).
    """
    mat = to_gf2(matrix).copy()
    if mat.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = mat.shape
    transform = np.eye(m, dtype=np.uint8)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
            transform[[row, pivot]] = transform[[pivot, row]]
        hits = np.nonzero(mat[:, col])[0]
        for r in hits:
            if r != row:
                mat[r] ^= mat[row]
                transform[r] ^= transform[row]
        pivots.append(col)
        row += 1
    return RowReduceResult(
        matrix=mat, rank=len(pivots), pivots=tuple(pivots), transform=transform
    )


def rank(matrix) -> int:
    mat = to_gf2(matrix)
    if mat.size == 0:
        return 0
    return row_reduce(mat).rank


def nullspace(matrix, ncols: Optional[int] = None) -> np.ndarray:
    """Basis of {v : matrix @ v = 0 mod 2}, one vector per row.

    Basis vectors are indexed by free columns in increasing order, which makes
    the result canonical for a fixed column ordering.
    """
    mat = to_gf2(matrix)
    if mat.size == 0:
        n = ncols if ncols is not None else mat.shape[1]
        return np.eye(n, dtype=np.uint8)
    reduced = row_reduce(mat)
    n = mat.shape[1]
    pivot_set = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivot_set):
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for r, col in enumerate(reduced.pivots):
            if reduced.matrix[r, free]:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return np.vstack(basis)


def left_nullspace(matrix) -> np.ndarray:
    """Row combinations that sum to zero (relations among rows)."""
    return nullspace(to_gf2(matrix).T)


def solve(matrix, target) -> Optional[np.ndarray]:
    """Some x with x @ matrix == target (mod 2), or None if inconsistent.

    Rows of ``matrix`` are the vectors being combined.
    """
    mat = to_gf2(matrix)
    vec = to_gf2(target)
    if mat.shape[0] == 0:
        return np.zeros(0, dtype=np.uint8) if not vec.any() else None
    reduced = row_reduce(mat)
    residual = vec.copy()
    combo = np.zeros(mat.shape[0], dtype=np.uint8)
    for r, col in enumerate(reduced.pivots):
        if residual[col]:
            residual ^= reduced.matrix[r]
            combo ^= reduced.transform[r]
    if residual.any():
        return None
    return combo
