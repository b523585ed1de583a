"""GF(2) linear algebra on small dense bit matrices."""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np


def to_gf2(matrix) -> np.ndarray:
    return np.array(matrix, dtype=np.uint8) % 2


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def row_reduce(matrix) -> RowReduceResult:
    """Reduced row echelon form by Gaussian elimination."""
    mat = to_gf2(matrix).copy()
    n_rows, n_cols = mat.shape
    pivots = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        candidates = np.flatnonzero(mat[row:, col])
        if candidates.size == 0:
            continue
        pivot = row + candidates[0]
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        hits = np.flatnonzero(mat[:, col])
        hits = hits[hits != row]
        mat[hits] ^= mat[row]
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def rank(matrix) -> int:
    return row_reduce(matrix).rank


def nullspace(matrix) -> np.ndarray:
    """Basis of {x : M x = 0}, one basis vector per row."""
    reduced = row_reduce(matrix)
    mat = reduced.matrix
    n_cols = mat.shape[1]
    pivot_set = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n_cols) if c not in pivot_set):
        vec = np.zeros(n_cols, dtype=np.uint8)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            if mat[row, free]:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((0, n_cols), dtype=np.uint8)
    return np.vstack(basis)


def pack_rows(vectors: np.ndarray) -> List[int]:
    """Bit vectors to ints, entry i -> bit i."""
    weights = 1 << np.arange(vectors.shape[1], dtype=np.int64)
    return [int(v) for v in (vectors.astype(np.int64) * weights).sum(axis=1)]


def span(basis: List[int]) -> np.ndarray:
    """All 2^len(basis) XOR combinations, sorted."""
    points = np.zeros(1, dtype=np.int64)
    for b in basis:
        points = np.concatenate([points, points ^ b])
    return np.sort(points)
