"""
Integral unimodular lattices, their vectors and their automorphisms.

A lattice is stored as a Gram matrix with labelled basis. Vectors and
automorphisms hold a reference to their parent lattice; two lattices are the
same parent when their Gram matrices and labels agree.
"""
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple
import logging

import numpy as np

from .diagonalize import (
    characteristic_residue,
    gram_determinant,
    gram_signature,
    integer_inverse,
)
from ..errors import LatticeError

logger = logging.getLogger(__name__)

# Squares allowed for reflection vectors
REFLECTION_SQUARES = (1, -1, 2, -2)

# -E8 as the Dynkin chain 0-1-2-3-4-5-6 with node 7 attached to node 4
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def _as_rows(matrix) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


@dataclass(frozen=True)
class IntersectionLattice:
    """
    Integral symmetric bilinear form with a labelled basis.

    The Gram matrix must be symmetric with determinant +-1.
    """
    gram: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        gram = _as_rows(self.gram)
        labels = tuple(str(label) for label in self.labels)
        object.__setattr__(self, 'gram', gram)
        object.__setattr__(self, 'labels', labels)

        rank = len(gram)
        if any(len(row) != rank for row in gram):
            raise LatticeError(f"Gram matrix is not square: {[len(row) for row in gram]}")
        if len(labels) != rank:
            raise LatticeError(f"Expected {rank} basis labels, got {len(labels)}")
        if any(gram[i][j] != gram[j][i] for i in range(rank) for j in range(i)):
            raise LatticeError("Gram matrix is not symmetric")
        det = gram_determinant(gram)
        if abs(det) != 1:
            raise LatticeError(f"Gram matrix is not unimodular (det = {det})")

    # ---- constructors -------------------------------------------------

    @classmethod
    def empty(cls) -> 'IntersectionLattice':
        return cls((), ())

    @classmethod
    def diagonal(cls, entries: Sequence[int], labels: Optional[Sequence[str]] = None) -> 'IntersectionLattice':
        """diag(entries); entries must be +-1."""
        n = len(entries)
        gram = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        if labels is None:
            labels = [f"x{i}" for i in range(n)]
        return cls(_as_rows(gram), tuple(labels))

    @classmethod
    def hyperbolic(cls, labels: Sequence[str] = ('a', 'b')) -> 'IntersectionLattice':
        """The hyperbolic plane H with Gram [[0, 1], [1, 0]]."""
        return cls(((0, 1), (1, 0)), tuple(labels))

    @classmethod
    def negative_e8(cls, prefix: str = 'r') -> 'IntersectionLattice':
        gram = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
        for i, j in _E8_EDGES:
            gram[i][j] = gram[j][i] = 1
        return cls(_as_rows(gram), tuple(f"{prefix}{i}" for i in range(8)))

    @classmethod
    def from_dict(cls, data: dict) -> 'IntersectionLattice':
        try:
            return cls(_as_rows(data['gram']), tuple(data['labels']))
        except KeyError as exc:
            raise LatticeError(f"Lattice JSON is missing field {exc}") from exc

    def to_dict(self) -> dict:
        return {'gram': [list(row) for row in self.gram], 'labels': list(self.labels)}

    # ---- derived data -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Gram matrix as an exact (object dtype) numpy array."""
        return np.array(self.gram, dtype=object).reshape(self.rank, self.rank)

    @cached_property
    def inverse_matrix(self) -> np.ndarray:
        return np.array(integer_inverse(self.gram), dtype=object).reshape(self.rank, self.rank)

    @property
    def signature(self) -> Tuple[int, int]:
        """(b_plus, b_minus) from exact congruence diagonalization."""
        return gram_signature(self.gram)

    @property
    def b_plus(self) -> int:
        return self.signature[0]

    @property
    def b_minus(self) -> int:
        return self.signature[1]

    @property
    def sigma(self) -> int:
        return self.b_plus - self.b_minus

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def residue(self) -> Tuple[int, ...]:
        """Parity pattern shared by all characteristic vectors."""
        return characteristic_residue(self.gram)

    @cached_property
    def reflection_roots(self) -> Tuple['LatticeVector', ...]:
        """
        Vectors with entries in {-1, 0, 1}, at most two nonzero, whose square
        is +-1 or +-2. Pool for random reflection words.
        """
        roots = []
        for i in range(self.rank):
            for j in range(i, self.rank):
                for si in (1, -1):
                    for sj in ((0,) if i == j else (1, -1)):
                        coords = [0] * self.rank
                        coords[i] = si
                        if j != i:
                            coords[j] = sj
                        v = LatticeVector(tuple(coords), self)
                        if v.square in REFLECTION_SQUARES:
                            roots.append(v)
        return tuple(roots)

    # ---- elements ----------------------------------------------------

    def vector(self, coords: Iterable[int]) -> 'LatticeVector':
        return LatticeVector(tuple(coords), self)

    def zero(self) -> 'LatticeVector':
        return LatticeVector((0,) * self.rank, self)

    def basis_vector(self, index: int) -> 'LatticeVector':
        coords = [0] * self.rank
        coords[index] = 1
        return LatticeVector(tuple(coords), self)

    def identity(self) -> 'LatticeAutomorphism':
        return LatticeAutomorphism(_as_rows(np.eye(self.rank, dtype=int)), self)

    def __str__(self):
        return f"IntersectionLattice(rank={self.rank}, signature={self.signature})"


@dataclass(frozen=True)
class LatticeVector:
    """Integer coordinate vector in a parent lattice."""
    coords: Tuple[int, ...]
    parent: IntersectionLattice

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        object.__setattr__(self, 'coords', coords)
        if len(coords) != self.parent.rank:
            raise LatticeError(
                f"Vector of length {len(coords)} does not fit a lattice of rank {self.parent.rank}"
            )

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=object)

    @property
    def square(self) -> int:
        return pair(self, self)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def block(self, start: int, stop: int) -> Tuple[int, ...]:
        return self.coords[start:stop]

    def _same_parent(self, other: 'LatticeVector'):
        if not isinstance(other, LatticeVector):
            raise LatticeError(f"Expected a lattice vector, got {type(other).__name__}")
        if other.parent is not self.parent and other.parent != self.parent:
            raise LatticeError("Vectors belong to different lattices")

    def __add__(self, other: 'LatticeVector') -> 'LatticeVector':
        self._same_parent(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.parent)

    def __sub__(self, other: 'LatticeVector') -> 'LatticeVector':
        self._same_parent(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.parent)

    def __neg__(self) -> 'LatticeVector':
        return LatticeVector(tuple(-a for a in self.coords), self.parent)

    def __mul__(self, scalar: int) -> 'LatticeVector':
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return LatticeVector(tuple(int(scalar) * a for a in self.coords), self.parent)

    __rmul__ = __mul__

    def to_list(self):
        return list(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class LatticeAutomorphism:
    """
    Integer matrix M acting on coordinate columns with M^T G M = G.

    det M = +-1 follows from form preservation since G is unimodular.
    """
    matrix: Tuple[Tuple[int, ...], ...]
    parent: IntersectionLattice

    def __post_init__(self):
        rows = _as_rows(self.matrix)
        object.__setattr__(self, 'matrix', rows)
        n = self.parent.rank
        if len(rows) != n or any(len(row) != n for row in rows):
            raise LatticeError(f"Automorphism matrix must be {n}x{n}")
        M = self.array
        if n and not np.array_equal(M.T.dot(self.parent.matrix).dot(M), self.parent.matrix):
            raise LatticeError("Matrix does not preserve the intersection form")

    @classmethod
    def from_array(cls, array, parent: IntersectionLattice) -> 'LatticeAutomorphism':
        return cls(_as_rows(np.asarray(array)), parent)

    @classmethod
    def block_sum(cls, first: 'LatticeAutomorphism', second: 'LatticeAutomorphism',
                  parent: IntersectionLattice) -> 'LatticeAutomorphism':
        """Block-diagonal automorphism on a lattice laid out as first (+) second."""
        n1, n2 = first.parent.rank, second.parent.rank
        M = np.zeros((n1 + n2, n1 + n2), dtype=object)
        M[:n1, :n1] = first.array
        M[n1:, n1:] = second.array
        return cls(_as_rows(M), parent)

    @cached_property
    def array(self) -> np.ndarray:
        n = self.parent.rank
        return np.array(self.matrix, dtype=object).reshape(n, n)

    @cached_property
    def is_identity(self) -> bool:
        n = self.parent.rank
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def apply(self, v: LatticeVector) -> LatticeVector:
        if v.parent is not self.parent and v.parent != self.parent:
            raise LatticeError("Vector and automorphism belong to different lattices")
        if not self.parent.rank:
            return v
        return LatticeVector(tuple(self.array.dot(v.array)), self.parent)

    __call__ = apply

    def compose(self, other: 'LatticeAutomorphism') -> 'LatticeAutomorphism':
        """self o other: apply other first."""
        if other.parent is not self.parent and other.parent != self.parent:
            raise LatticeError("Cannot compose automorphisms of different lattices")
        if not self.parent.rank:
            return self
        return LatticeAutomorphism(_as_rows(self.array.dot(other.array)), self.parent)

    def inverse(self) -> 'LatticeAutomorphism':
        # M^T G M = G gives M^-1 = G^-1 M^T G
        if not self.parent.rank:
            return self
        G = self.parent.matrix
        return LatticeAutomorphism(_as_rows(self.parent.inverse_matrix.dot(self.array.T).dot(G)), self.parent)

    def conjugate(self, psi: 'LatticeAutomorphism') -> 'LatticeAutomorphism':
        """psi o self o psi^-1."""
        return psi.compose(self).compose(psi.inverse())

    def to_list(self):
        return [list(row) for row in self.matrix]


def _check_parents(x: LatticeVector, y: LatticeVector):
    if x.parent is not y.parent and x.parent != y.parent:
        raise LatticeError(
            f"Cannot pair vectors of different lattices ({x.parent} and {y.parent})"
        )


def pair(x: LatticeVector, y: LatticeVector) -> int:
    """Intersection pairing x^T G y."""
    _check_parents(x, y)
    if not x.parent.rank:
        return 0
    return int(x.array.dot(x.parent.matrix).dot(y.array))


def is_characteristic(c: LatticeVector) -> bool:
    """c.x = x.x (mod 2) for every basis vector x."""
    G = c.parent.matrix
    if not c.parent.rank:
        return True
    products = G.dot(c.array)
    return all((int(products[i]) - int(G[i, i])) % 2 == 0 for i in range(c.parent.rank))


def divisibility(c: LatticeVector) -> int:
    """gcd of the coordinates; 0 for the zero vector."""
    return reduce(gcd, (abs(x) for x in c.coords), 0)


def direct_sum(first: IntersectionLattice, second: IntersectionLattice,
               prefixes: Optional[Tuple[str, str]] = None) -> IntersectionLattice:
    """
    Block-diagonal sum. With prefixes, labels become 'prefix:label'.
    """
    n1, n2 = first.rank, second.rank
    gram = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = first.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = second.gram[i][j]

    if prefixes is None:
        labels = first.labels + second.labels
    else:
        labels = (tuple(f"{prefixes[0]}:{label}" for label in first.labels)
                  + tuple(f"{prefixes[1]}:{label}" for label in second.labels))
    return IntersectionLattice(_as_rows(gram), labels)


def reflection(v: LatticeVector) -> LatticeAutomorphism:
    """Matrix of x -> x - (2 x.v / v.v) v."""
    s = v.square
    if s not in REFLECTION_SQUARES:
        raise LatticeError(f"Reflection needs a vector of square +-1 or +-2, got {s}")
    n = v.parent.rank
    # column j is the image of e_j; (2 / s) is an integer since |s| divides 2
    Gv = v.parent.matrix.dot(v.array)
    scale = 2 // s if s in (1, -1) else s // 2
    M = np.eye(n, dtype=int).astype(object) - scale * np.outer(v.array, Gv)
    return LatticeAutomorphism(_as_rows(M), v.parent)


def reflect(v: LatticeVector, x: LatticeVector) -> LatticeVector:
    """Reflect x in the hyperplane orthogonal to v."""
    _check_parents(v, x)
    s = v.square
    if s not in REFLECTION_SQUARES:
        raise LatticeError(f"Reflection needs a vector of square +-1 or +-2, got {s}")
    coefficient = (2 * pair(x, v)) // s
    return x - coefficient * v


def random_automorphism(lattice: IntersectionLattice, seed: int, word_length: int) -> LatticeAutomorphism:
    """
    Deterministic word of reflections in vectors of square +-1, +-2.

    Args:
        lattice: lattice to act on
        seed: seed for numpy's default_rng
        word_length: number of reflections (0 gives the identity)
    """
    if word_length < 0:
        raise LatticeError(f"word_length must be non-negative, got {word_length}")
    result = lattice.identity()
    roots = lattice.reflection_roots
    if not roots or word_length == 0:
        return result

    rng = np.random.default_rng(seed)
    for index in rng.integers(0, len(roots), size=word_length):
        result = reflection(roots[int(index)]).compose(result)
    return result
