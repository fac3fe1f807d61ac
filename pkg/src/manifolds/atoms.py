"""
Standard 4-manifold atoms and their intersection lattices.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional
import logging

from ..config import ATOM_NAMES, CHART
from ..errors import ManifoldError
from ..lattice import IntersectionLattice, LatticeVector, direct_sum, divisibility

logger = logging.getLogger(__name__)


class AtomKind(str, Enum):
    CP2 = 'CP2'
    CP2BAR = 'CP2BAR'
    S2xS2 = 'S2xS2'
    K3 = 'K3'
    E1 = 'E1'
    E1LOG = 'E1LOG'


# Atoms carrying a standard positive scalar curvature metric (E1 is CP2 # 9CP2bar)
PSC_KINDS = frozenset({AtomKind.CP2, AtomKind.CP2BAR, AtomKind.S2xS2, AtomKind.E1})


@dataclass(frozen=True)
class Atom:
    kind: AtomKind
    m: Optional[int] = None
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', AtomKind(self.kind))
        if self.kind is AtomKind.E1LOG:
            if self.m is None or self.n is None:
                raise ManifoldError("E1(m,n) needs both multiplicities")
            if self.m < 2 or self.n < 2:
                raise ManifoldError(f"E1({self.m},{self.n}): multiplicities must be at least 2")
            if gcd(self.m, self.n) != 1:
                raise ManifoldError(f"E1({self.m},{self.n}): multiplicities must be coprime")
        elif self.m is not None or self.n is not None:
            raise ManifoldError(f"{self.kind.value} takes no parameters")

    @classmethod
    def e1log(cls, m: int, n: int) -> 'Atom':
        return cls(AtomKind.E1LOG, m, n)

    @property
    def is_psc(self) -> bool:
        return self.kind in PSC_KINDS

    @property
    def is_elliptic(self) -> bool:
        return self.kind in (AtomKind.E1, AtomKind.E1LOG)

    @property
    def lattice(self) -> IntersectionLattice:
        return atom_lattice(self)

    def __str__(self):
        if self.kind is AtomKind.E1LOG:
            return f"E1({self.m},{self.n})"
        return ATOM_NAMES[self.kind.value]


@lru_cache(maxsize=None)
def chart_lattice() -> IntersectionLattice:
    """Z^{1,9} with basis h, e1, ..., e9."""
    return IntersectionLattice.diagonal([1] + [-1] * 9, CHART['labels'])


@lru_cache(maxsize=None)
def k3_lattice() -> IntersectionLattice:
    lattice = direct_sum(IntersectionLattice.negative_e8('r'), IntersectionLattice.negative_e8('s'))
    for i in range(1, 4):
        lattice = direct_sum(lattice, IntersectionLattice.hyperbolic((f'a{i}', f'b{i}')))
    return lattice


def atom_lattice(atom: Atom) -> IntersectionLattice:
    kind = atom.kind
    if kind is AtomKind.CP2:
        return IntersectionLattice.diagonal([1], ['h'])
    if kind is AtomKind.CP2BAR:
        return IntersectionLattice.diagonal([-1], ['e'])
    if kind is AtomKind.S2xS2:
        return IntersectionLattice.hyperbolic()
    if kind is AtomKind.K3:
        return k3_lattice()
    return chart_lattice()


def fiber_class() -> LatticeVector:
    """t' = 3h - e1 - ... - e9 in the chart."""
    return chart_lattice().vector(CHART['fiber'])


@dataclass(frozen=True)
class E1LogModel:
    """
    Canonical data of E1(m,n) in the fixed chart.

    t' is primitive of square zero, K = k t' with k = mn - m - n,
    F = mn t', F_m = n t', F_n = m t'.
    """
    m: int
    n: int

    def __post_init__(self):
        Atom.e1log(self.m, self.n)
        self.verify()

    @classmethod
    def for_atom(cls, atom: Atom) -> 'E1LogModel':
        if atom.kind is not AtomKind.E1LOG:
            raise ManifoldError(f"{atom} is not a logarithmic transform of E1")
        return cls(atom.m, atom.n)

    @property
    def atom(self) -> Atom:
        return Atom.e1log(self.m, self.n)

    @cached_property
    def t_prime(self) -> LatticeVector:
        return fiber_class()

    @property
    def k(self) -> int:
        return self.m * self.n - self.m - self.n

    @cached_property
    def K(self) -> LatticeVector:
        return self.k * self.t_prime

    @cached_property
    def F(self) -> LatticeVector:
        return (self.m * self.n) * self.t_prime

    @cached_property
    def F_m(self) -> LatticeVector:
        return self.n * self.t_prime

    @cached_property
    def F_n(self) -> LatticeVector:
        return self.m * self.t_prime

    def verify(self):
        """Check the canonical class relations; raises ManifoldError on failure."""
        checks = {
            'K^2 = 0': self.K.square == 0,
            'divisibility(K) = mn - m - n': divisibility(self.K) == self.k,
            'n F_n = F': self.n * self.F_n == self.F,
            'm F_m = F': self.m * self.F_m == self.F,
            'K = -F + (n-1) F_n + (m-1) F_m':
                self.K == -self.F + (self.n - 1) * self.F_n + (self.m - 1) * self.F_m,
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise ManifoldError(f"E1({self.m},{self.n}) model fails: {', '.join(failed)}")
