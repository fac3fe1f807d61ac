"""
Symbolic diffeomorphisms: a provenance tree plus the induced lattice automorphism.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional, Tuple
import logging

import numpy as np

from ..errors import ManifoldError, PreconditionError
from ..lattice import LatticeAutomorphism, sgn_plus
from ..manifolds import ManifoldExpr, SpinCClass, lattice_of

logger = logging.getLogger(__name__)


class DiffeoKind(str, Enum):
    IDENTITY = 'identity'
    RHO = 'rho'
    CONNSUM = 'connsum'
    COMPOSE = 'compose'
    INVERSE = 'inverse'
    RELABEL = 'relabel'


@dataclass(frozen=True)
class DiffeoExpr:
    """
    A diffeomorphism of `source` built from identities, the involution rho of an
    S2xS2 summand, connected sums, compositions, inverses and relabellings.

    Use the classmethod constructors; they check that the pieces fit.
    """
    source: ManifoldExpr
    kind: DiffeoKind
    children: Tuple['DiffeoExpr', ...] = ()
    index: Optional[int] = None
    psi: Optional[LatticeAutomorphism] = None
    psi_name: Optional[str] = None

    # ---- constructors -------------------------------------------------

    @classmethod
    def identity(cls, source: ManifoldExpr) -> 'DiffeoExpr':
        return cls(source, DiffeoKind.IDENTITY)

    @classmethod
    def rho(cls, source: ManifoldExpr, index: int = 1) -> 'DiffeoExpr':
        """rho on the index-th (1-based) S2xS2 summand of source."""
        count = len(source.s2xs2_positions())
        if not 1 <= index <= count:
            raise ManifoldError(f"rho@{index}: {source} has {count} S2xS2 summands")
        return cls(source, DiffeoKind.RHO, index=index)

    @classmethod
    def conn_sum(cls, left: 'DiffeoExpr', right: 'DiffeoExpr') -> 'DiffeoExpr':
        return cls(left.source.connect(right.source), DiffeoKind.CONNSUM, (left, right))

    @classmethod
    def compose(cls, first: 'DiffeoExpr', second: 'DiffeoExpr') -> 'DiffeoExpr':
        """first o second."""
        if first.source != second.source:
            raise ManifoldError(f"Cannot compose diffeomorphisms of {first.source} and {second.source}")
        return cls(first.source, DiffeoKind.COMPOSE, (first, second))

    @classmethod
    def inverse(cls, f: 'DiffeoExpr') -> 'DiffeoExpr':
        return cls(f.source, DiffeoKind.INVERSE, (f,))

    @classmethod
    def relabel(cls, psi: LatticeAutomorphism, conjugand: 'DiffeoExpr', target: ManifoldExpr,
                name: str = 'psi') -> 'DiffeoExpr':
        """
        psi o conjugand o psi^-1 as a diffeomorphism of target.

        psi identifies H^2 of conjugand.source with H^2 of target, so both must
        carry the same lattice.
        """
        lattice = lattice_of(target)
        if lattice_of(conjugand.source) != lattice:
            raise ManifoldError(
                f"conj: {conjugand.source} and {target} do not share an intersection lattice"
            )
        if psi.parent != lattice:
            raise ManifoldError(f"conj: automorphism '{name}' does not act on the lattice of {target}")
        return cls(target, DiffeoKind.RELABEL, (conjugand,), psi=psi, psi_name=name)

    # ---- structure ---------------------------------------------------

    @property
    def left(self) -> 'DiffeoExpr':
        return self.children[0]

    @property
    def right(self) -> 'DiffeoExpr':
        return self.children[1]

    def walk(self):
        """Pre-order traversal."""
        yield self
        for child in self.children:
            yield from child.walk()

    # ---- lattice action ----------------------------------------------

    @cached_property
    def induced(self) -> LatticeAutomorphism:
        lattice = lattice_of(self.source)
        if self.kind is DiffeoKind.IDENTITY:
            return lattice.identity()
        if self.kind is DiffeoKind.RHO:
            position = self.source.s2xs2_positions()[self.index - 1]
            start, stop = self.source.offsets[position]
            M = np.eye(lattice.rank, dtype=int)
            M[start:stop, start:stop] *= -1
            return LatticeAutomorphism.from_array(M, lattice)
        if self.kind is DiffeoKind.CONNSUM:
            return LatticeAutomorphism.block_sum(self.left.induced, self.right.induced, lattice)
        if self.kind is DiffeoKind.COMPOSE:
            return self.left.induced.compose(self.right.induced)
        if self.kind is DiffeoKind.INVERSE:
            return self.children[0].induced.inverse()
        conjugated = self.children[0].induced.conjugate(self.psi)
        return LatticeAutomorphism(conjugated.matrix, lattice)

    @cached_property
    def is_torelli(self) -> bool:
        return self.induced.is_identity

    @cached_property
    def sgn_plus(self) -> int:
        return sgn_plus(self.induced)

    def __str__(self):
        if self.kind is DiffeoKind.IDENTITY:
            return "id"
        if self.kind is DiffeoKind.RHO:
            return f"rho@{self.index}"
        if self.kind is DiffeoKind.CONNSUM:
            return f"({self.left} # {self.right})"
        if self.kind is DiffeoKind.COMPOSE:
            return f"({self.left} * {self.right})"
        if self.kind is DiffeoKind.INVERSE:
            return f"inv({self.children[0]})"
        return f"conj({self.psi_name}, {self.children[0]}, {self.children[0].source})"


def preserves(f: DiffeoExpr, s: SpinCClass) -> bool:
    """f^*(c(s)) = c(s)."""
    if f.source != s.manifold:
        raise PreconditionError(f"Diffeomorphism of {f.source} applied to a class on {s.manifold}")
    return f.induced.apply(s.c) == s.c


def is_torelli(f: DiffeoExpr) -> bool:
    """Acts trivially on H^2(X; Z)."""
    return f.is_torelli


def sgn_plus_of(f: DiffeoExpr) -> int:
    return f.sgn_plus
