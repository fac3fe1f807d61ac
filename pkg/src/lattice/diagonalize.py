"""
Exact arithmetic on Gram matrices given as tuples of integer rows.

Everything here works in sympy rationals or over F2; nothing touches floating
point. Results are cached on the Gram tuple so that equal lattices built by
different manifold expressions share the work.
"""
from functools import lru_cache
from typing import Tuple
import logging

import numpy as np
import sympy

logger = logging.getLogger(__name__)

Gram = Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=None)
def gram_determinant(gram: Gram) -> int:
    """Exact determinant of an integer Gram matrix (1 for the empty matrix)."""
    if not gram:
        return 1
    return int(sympy.Matrix(gram).det(method='bareiss'))


@lru_cache(maxsize=None)
def congruence_diagonalize(gram: Gram):
    """
    Symmetric Gaussian elimination over Q.

    Returns (rows, diagonal) where rows is a tuple of rational basis vectors
    b_0, ..., b_{n-1} written in the original coordinates, pairwise orthogonal
    for the form, with b_i . b_i = diagonal[i].

    Args:
        gram: symmetric integer matrix as a tuple of rows

    Returns:
        Tuple (rows, diagonal) of sympy Rationals
    """
    n = len(gram)
    if n == 0:
        return (), ()

    A = sympy.Matrix(gram).applyfunc(sympy.Rational)
    T = sympy.eye(n)

    for i in range(n):
        if A[i, i] == 0:
            swap = next((j for j in range(i + 1, n) if A[j, j] != 0), None)
            if swap is not None:
                A.row_swap(i, swap)
                A.col_swap(i, swap)
                T.row_swap(i, swap)
            else:
                partner = next((j for j in range(i + 1, n) if A[i, j] != 0), None)
                if partner is None:
                    continue
                # e_i <- e_i + e_j; the new pivot is 2 A[i, j] since both diagonals vanish
                A[i, :] = A[i, :] + A[partner, :]
                A[:, i] = A[:, i] + A[:, partner]
                T[i, :] = T[i, :] + T[partner, :]

        pivot = A[i, i]
        for j in range(i + 1, n):
            if A[j, i] != 0:
                factor = A[j, i] / pivot
                A[j, :] = A[j, :] - factor * A[i, :]
                A[:, j] = A[:, j] - factor * A[:, i]
                T[j, :] = T[j, :] - factor * T[i, :]

    rows = tuple(tuple(T[i, j] for j in range(n)) for i in range(n))
    diagonal = tuple(A[i, i] for i in range(n))
    return rows, diagonal


@lru_cache(maxsize=None)
def gram_signature(gram: Gram) -> Tuple[int, int]:
    """(b_plus, b_minus) read off the congruence diagonalization."""
    _, diagonal = congruence_diagonalize(gram)
    b_plus = sum(1 for x in diagonal if x > 0)
    b_minus = sum(1 for x in diagonal if x < 0)
    return b_plus, b_minus


@lru_cache(maxsize=None)
def integer_inverse(gram: Gram) -> Gram:
    """Inverse of a unimodular Gram matrix, which is again integral."""
    if not gram:
        return ()
    inverse = sympy.Matrix(gram).inv(method='LU')
    return tuple(tuple(int(inverse[i, j]) for j in range(len(gram))) for i in range(len(gram)))


def solve_mod2(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """
    Solve matrix . x = rhs over F2 by Gauss-Jordan elimination.

    Raises:
        ValueError: if the matrix is singular mod 2
    """
    n = matrix.shape[0]
    augmented = np.concatenate(
        [np.asarray(matrix, dtype=np.int64) % 2, (np.asarray(rhs, dtype=np.int64) % 2).reshape(n, 1)],
        axis=1,
    ).astype(np.uint8)

    for col in range(n):
        pivots = np.nonzero(augmented[col:, col])[0]
        if len(pivots) == 0:
            raise ValueError(f"Matrix is singular mod 2 at column {col}")
        pivot = col + pivots[0]
        if pivot != col:
            augmented[[col, pivot]] = augmented[[pivot, col]]
        for row in range(n):
            if row != col and augmented[row, col]:
                augmented[row] ^= augmented[col]

    return augmented[:, n].astype(np.int64)


@lru_cache(maxsize=None)
def characteristic_residue(gram: Gram) -> Tuple[int, ...]:
    """
    The unique r in {0,1}^n with c = r (mod 2) for every characteristic c.

    Characteristic means (G c)_i = G_ii (mod 2); G is invertible mod 2 when
    it is unimodular, so the residue is unique.
    """
    if not gram:
        return ()
    G = np.array(gram, dtype=np.int64)
    return tuple(int(x) for x in solve_mod2(G, np.diag(G)))


def f2_rank(matrix: np.ndarray) -> int:
    """Rank over F2 of a 0/1 matrix."""
    work = np.asarray(matrix, dtype=np.uint8) % 2
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(work[rank:, col])[0]
        if len(pivots) == 0:
            continue
        pivot = rank + pivots[0]
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        for row in range(rows):
            if row != rank and work[row, col]:
                work[row] ^= work[rank]
        rank += 1
    return rank
