"""
Connected-sum expressions over the standard atoms, their invariants and
spin^c classes.
"""
from dataclasses import dataclass, asdict
from functools import cached_property, lru_cache
from itertools import groupby
from typing import List, Tuple
import logging

from .atoms import Atom, AtomKind
from ..errors import ManifoldError
from ..lattice import (
    IntersectionLattice,
    LatticeVector,
    divisibility,
    enumerate_characteristics,
    is_characteristic,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ManifoldExpr:
    """Non-empty ordered connected sum of atoms."""
    summands: Tuple[Atom, ...]

    def __post_init__(self):
        summands = tuple(self.summands)
        object.__setattr__(self, 'summands', summands)
        if not summands:
            raise ManifoldError("A manifold expression needs at least one summand")
        if any(not isinstance(atom, Atom) for atom in summands):
            raise ManifoldError("Summands must be atoms")
        inv = invariants(self)
        if inv.is_spin and inv.sigma % 16 != 0:
            raise ManifoldError(f"{self}: spin with signature {inv.sigma}, contradicting Rochlin's theorem")

    @classmethod
    def of(cls, *atoms: Atom) -> 'ManifoldExpr':
        return cls(tuple(atoms))

    @classmethod
    def repeated(cls, atom: Atom, count: int) -> 'ManifoldExpr':
        return cls((atom,) * count)

    def connect(self, other: 'ManifoldExpr') -> 'ManifoldExpr':
        """self # other."""
        return ManifoldExpr(self.summands + other.summands)

    def split(self, k: int) -> Tuple['ManifoldExpr', 'ManifoldExpr']:
        """(first k summands, remaining summands); both parts must be non-empty."""
        if not 0 < k < len(self.summands):
            raise ManifoldError(f"Cannot split {self} after {k} summands")
        return ManifoldExpr(self.summands[:k]), ManifoldExpr(self.summands[k:])

    @property
    def lattice(self) -> IntersectionLattice:
        return lattice_of(self)

    @cached_property
    def offsets(self) -> Tuple[Tuple[int, int], ...]:
        """Coordinate range (start, stop) of each summand."""
        ranges, start = [], 0
        for atom in self.summands:
            stop = start + atom.lattice.rank
            ranges.append((start, stop))
            start = stop
        return tuple(ranges)

    def s2xs2_positions(self) -> List[int]:
        """0-based summand positions of the S2xS2 atoms."""
        return [i for i, atom in enumerate(self.summands) if atom.kind is AtomKind.S2xS2]

    def __len__(self):
        return len(self.summands)

    def __str__(self):
        parts = []
        for atom, group in groupby(self.summands):
            count = len(list(group))
            parts.append(f"{count}{atom}" if count > 1 else str(atom))
        return " # ".join(parts)


@dataclass(frozen=True)
class ManifoldInvariants:
    b_plus: int
    b_minus: int
    sigma: int
    euler: int
    is_spin: bool
    is_psc: bool

    @property
    def homeomorphism_type(self) -> Tuple[int, int, str]:
        return self.b_plus, self.b_minus, 'even' if self.is_spin else 'odd'

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SpinCClass:
    """A spin^c structure, recorded by its characteristic vector c(s)."""
    manifold: ManifoldExpr
    c: LatticeVector

    def __post_init__(self):
        if self.c.parent != self.manifold.lattice:
            raise ManifoldError(f"Class {self.c} does not live on the lattice of {self.manifold}")
        if not is_characteristic(self.c):
            raise ManifoldError(f"{self.c} is not characteristic on {self.manifold}")

    @classmethod
    def from_coords(cls, manifold: ManifoldExpr, coords) -> 'SpinCClass':
        return cls(manifold, manifold.lattice.vector(coords))

    @property
    def square(self) -> int:
        return self.c.square

    @property
    def divisibility(self) -> int:
        return divisibility(self.c)

    def component(self, position: int) -> Tuple[int, ...]:
        start, stop = self.manifold.offsets[position]
        return self.c.block(start, stop)

    def split(self, k: int) -> Tuple['SpinCClass', 'SpinCClass']:
        """Restrictions to the first k summands and to the rest."""
        first, second = self.manifold.split(k)
        cut = self.manifold.offsets[k][0]
        return (SpinCClass(first, first.lattice.vector(self.c.coords[:cut])),
                SpinCClass(second, second.lattice.vector(self.c.coords[cut:])))

    def __str__(self):
        return str(self.c)


@lru_cache(maxsize=None)
def lattice_of(manifold: ManifoldExpr) -> IntersectionLattice:
    """Block sum of the atom lattices, labels prefixed by the 1-based summand position."""
    gram_rows: List[List[int]] = []
    labels: List[str] = []
    total = sum(atom.lattice.rank for atom in manifold.summands)
    start = 0
    for position, atom in enumerate(manifold.summands, start=1):
        block = atom.lattice
        for i in range(block.rank):
            row = [0] * total
            row[start:start + block.rank] = block.gram[i]
            gram_rows.append(row)
        labels.extend(f"{position}:{label}" for label in block.labels)
        start += block.rank
    return IntersectionLattice(tuple(tuple(row) for row in gram_rows), tuple(labels))


@lru_cache(maxsize=None)
def invariants(manifold: ManifoldExpr) -> ManifoldInvariants:
    lattice = lattice_of(manifold)
    b_plus, b_minus = lattice.signature
    return ManifoldInvariants(
        b_plus=b_plus,
        b_minus=b_minus,
        sigma=b_plus - b_minus,
        euler=2 + b_plus + b_minus,
        is_spin=lattice.is_even,
        is_psc=all(atom.is_psc for atom in manifold.summands),
    )


def expected_dimension(manifold: ManifoldExpr, s: SpinCClass) -> int:
    """d(s) = (c^2 - sigma)/4 - b_plus - 1."""
    inv = invariants(manifold)
    numerator = s.square - inv.sigma
    if numerator % 4 != 0:
        raise ManifoldError(f"c^2 - sigma = {numerator} is not divisible by 4; {s} is not characteristic")
    return numerator // 4 - inv.b_plus - 1


def spinc_family(manifold: ManifoldExpr, bound: int, multiple: int = 1) -> List[SpinCClass]:
    """
    Spin^c classes with d(s) = -1, i.e. c^2 = 10 - b_minus, under a coordinate bound.

    Args:
        manifold: expression with b_plus = 2
        bound: bound on |c_i|
        multiple: restrict to classes whose coordinates are all divisible by this odd number
    """
    inv = invariants(manifold)
    if inv.b_plus != 2:
        raise ManifoldError(f"S(X) is only defined here for b_plus = 2; {manifold} has b_plus = {inv.b_plus}")
    vectors = enumerate_characteristics(manifold.lattice, 10 - inv.b_minus, bound, multiple=multiple)
    return [SpinCClass(manifold, c) for c in vectors]


def connected_sum_spinc(first: SpinCClass, second: SpinCClass) -> SpinCClass:
    """s1 # s2 on X1 # X2: concatenated coordinates."""
    manifold = first.manifold.connect(second.manifold)
    return SpinCClass(manifold, manifold.lattice.vector(first.c.coords + second.c.coords))
