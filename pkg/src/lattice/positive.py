"""
Maximal positive-definite subspaces and the orientation character sgn_+.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Optional, Tuple
import logging

import numpy as np
import sympy

from .core import IntersectionLattice, LatticeAutomorphism
from .diagonalize import congruence_diagonalize
from ..errors import LatticeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PositiveSubspaceBasis:
    """b_plus rational vectors spanning a maximal positive-definite subspace."""
    vectors: Tuple[Tuple[sympy.Rational, ...], ...]
    parent: IntersectionLattice

    def __post_init__(self):
        vectors = tuple(tuple(sympy.Rational(x) for x in v) for v in self.vectors)
        object.__setattr__(self, 'vectors', vectors)
        if len(vectors) != self.parent.b_plus:
            raise LatticeError(
                f"A maximal positive subspace has dimension {self.parent.b_plus}, got {len(vectors)} vectors"
            )
        if any(len(v) != self.parent.rank for v in vectors):
            raise LatticeError("Positive basis vectors do not fit the lattice rank")
        if vectors and not self.gram().is_positive_definite:
            raise LatticeError("Basis does not span a positive-definite subspace")

    def gram(self) -> sympy.Matrix:
        P = sympy.Matrix(self.vectors)
        return P * sympy.Matrix(self.parent.gram) * P.T

    def integral(self) -> np.ndarray:
        """Rows rescaled by positive integers so every entry is an integer."""
        rows = []
        for v in self.vectors:
            scale = lcm(*(int(x.q) for x in v)) if v else 1
            rows.append([int(x * scale) for x in v])
        return np.array(rows, dtype=object).reshape(len(self.vectors), self.parent.rank)

    def transformed(self, phi: LatticeAutomorphism) -> 'PositiveSubspaceBasis':
        """Image basis phi(P); automorphisms carry positive subspaces to positive subspaces."""
        M = sympy.Matrix(phi.matrix)
        images = [tuple(M * sympy.Matrix(v)) for v in self.vectors]
        return PositiveSubspaceBasis(tuple(images), self.parent)


@lru_cache(maxsize=None)
def positive_basis(lattice: IntersectionLattice) -> PositiveSubspaceBasis:
    """Positive-diagonal directions of the congruence diagonalization."""
    rows, diagonal = congruence_diagonalize(lattice.gram)
    vectors = tuple(row for row, d in zip(rows, diagonal) if d > 0)
    return PositiveSubspaceBasis(vectors, lattice)


def sgn_plus(phi: LatticeAutomorphism, basis: Optional[PositiveSubspaceBasis] = None) -> int:
    """
    Whether phi preserves (+1) or reverses (-1) the orientation of maximal
    positive subspaces.

    The sign is that of det[p_i . phi(p_j)], which is the determinant of the
    projection of phi|_P back onto P up to the positive factor det Gram(P).
    Positive rescaling of the p_i keeps the sign, so the basis is cleared of
    denominators first and the determinant is an exact integer.
    """
    if basis is None:
        basis = positive_basis(phi.parent)
    elif basis.parent != phi.parent:
        raise LatticeError("Positive basis and automorphism belong to different lattices")
    if not basis.vectors:
        return 1

    P = basis.integral()
    products = P.dot(phi.parent.matrix).dot(phi.array).dot(P.T)
    det = sympy.Matrix(products.tolist()).det(method='bareiss')
    if det == 0:
        raise LatticeError("Degenerate positive projection; the basis is not maximal positive")
    return 1 if det > 0 else -1
