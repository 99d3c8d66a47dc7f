"""
Linear Algebra over GF(q)

Matrices are numpy integer arrays of element indices. Every operation
uses the field's exact tables; nothing here is floating point.

Convention: vectors are columns and matrices act on the left. When a
batch of vectors is stored as the rows of an array X, the images are the
rows of apply_to_rows(A, X).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from pimetric.ffield import FieldSpec


@lru_cache(maxsize=None)
def _list_tables(field: FieldSpec) -> tuple[list, list, list, list]:
    """Python-list copies of the tables for scalar-heavy loops."""
    return (
        field.add_table.tolist(),
        field.mul_table.tolist(),
        field.neg_table.tolist(),
        field.inv_table.tolist(),
    )


def identity_matrix(field: FieldSpec, k: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64)


def field_sum(field: FieldSpec, arr: np.ndarray, axis: int = -1) -> np.ndarray:
    """Field sum of an index array along one axis."""
    arr = np.moveaxis(np.asarray(arr, dtype=np.int64), axis, -1)
    acc = np.zeros(arr.shape[:-1], dtype=np.int64)
    for t in range(arr.shape[-1]):
        acc = field.add_table[acc, arr[..., t]]
    return acc


def matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} x {b.shape}")
    prods = field.mul_table[a[:, :, None], b[None, :, :]]
    return field_sum(field, prods, axis=1)


def matvec(field: FieldSpec, a: np.ndarray, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    return matmul(field, a, x[:, None])[:, 0]


def apply_to_rows(field: FieldSpec, a: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Images A x for every row x of rows; result has the same shape as rows."""
    a = np.asarray(a, dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    prods = field.mul_table[a[None, :, :], rows[:, None, :]]
    return field_sum(field, prods, axis=2)


# ============================================================
# GAUSSIAN ELIMINATION
# ============================================================

def row_reduce(field: FieldSpec, matrix) -> tuple[np.ndarray, list[int]]:
    """
    Reduced row echelon form over GF(q).

    Returns:
        (rref, pivot_columns)
    """
    add, mul, neg, inv = _list_tables(field)
    m = [list(map(int, row)) for row in np.asarray(matrix, dtype=np.int64)]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        scale = inv[m[r][c]]
        m[r] = [mul[scale][x] for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                factor = neg[m[i][c]]
                m[i] = [add[x][mul[factor][y]] for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return np.array(m, dtype=np.int64).reshape(rows, cols), pivots


def rank(field: FieldSpec, matrix) -> int:
    return len(row_reduce(field, matrix)[1])


def determinant(field: FieldSpec, matrix) -> int:
    """
    Determinant (as an element index) by Gaussian elimination.

    Raises:
        ValueError: If the matrix is not square
    """
    add, mul, neg, inv = _list_tables(field)
    m = [list(map(int, row)) for row in np.asarray(matrix, dtype=np.int64)]
    k = len(m)
    if any(len(row) != k for row in m):
        raise ValueError("determinant needs a square matrix")
    det = 1
    for c in range(k):
        pivot = next((i for i in range(c, k) if m[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = neg[det]
        det = mul[det][m[c][c]]
        scale = inv[m[c][c]]
        for i in range(c + 1, k):
            if m[i][c] != 0:
                factor = neg[mul[m[i][c]][scale]]
                m[i] = [add[x][mul[factor][y]] for x, y in zip(m[i], m[c])]
    return det


def is_invertible(field: FieldSpec, matrix) -> bool:
    return determinant(field, matrix) != 0


# ============================================================
# ENUMERATION
# ============================================================

def matrix_from_index(field: FieldSpec, index: int, rows: int, cols: int) -> np.ndarray:
    """
    The matrix at a position of the row-major base-q enumeration.

    The first entry is the most significant digit, so index 1 has a single
    1 in the bottom-right corner.
    """
    q = field.q
    flat = np.zeros(rows * cols, dtype=np.int64)
    for pos in range(rows * cols - 1, -1, -1):
        index, flat[pos] = divmod(index, q)
    return flat.reshape(rows, cols)


def iter_matrices(
    field: FieldSpec,
    rows: int,
    cols: int,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[np.ndarray]:
    """All rows x cols matrices over GF(q) with enumeration index in [start, stop)."""
    total = field.q ** (rows * cols)
    stop = total if stop is None else min(stop, total)
    for index in range(start, stop):
        yield matrix_from_index(field, index, rows, cols)
