"""
Divisibility classes O_q of S(X) and the summed invariant over them.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple
import logging

from tqdm import tqdm

from ..errors import PreconditionError
from ..families import (
    CertifiedValue,
    ChamberTag,
    DiffeoExpr,
    DiffeoKind,
    FamiliesEngine,
    FamilyQuery,
    chamber_defined,
    default_engine,
    preserves,
)
from ..lattice import divisibility, is_characteristic
from ..manifolds import AtomKind, E1LogModel, SpinCClass, fiber_class, invariants, spinc_family

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OqClass:
    """Square-zero characteristics of divisibility q."""
    q: int

    def __post_init__(self):
        if self.q < 1 or self.q % 2 == 0:
            raise PreconditionError(f"q must be a positive odd integer, got {self.q}")

    def contains(self, s: SpinCClass) -> bool:
        return s.square == 0 and is_characteristic(s.c) and divisibility(s.c) == self.q

    __contains__ = contains

    def members(self, manifold, bound: int) -> List[SpinCClass]:
        """Members of S(X) in O_q with every |c_i| <= bound."""
        return [s for s in spinc_family(manifold, bound, multiple=self.q) if self.contains(s)]


def candidate_support(f: DiffeoExpr) -> Set[Tuple[int, ...]]:
    """
    Characteristics on which the engine can certify a nonzero value for f.

    Nonzero values only come from S2xS2 collapses onto E1(m,n), where the
    class must be j t' (+) 0 with j odd and |j| <= mn - m - n. Relabellings
    move these by psi.
    """
    if f.kind is DiffeoKind.CONNSUM:
        left, right = f.left, f.right
        collapsible = (
            len(right.source) == 1 and right.source.summands[0].kind is AtomKind.S2xS2
            and len(left.source) == 1 and left.source.summands[0].kind is AtomKind.E1LOG
        )
        if not collapsible:
            return set()
        k = E1LogModel.for_atom(left.source.summands[0]).k
        t = fiber_class()
        return {tuple((j * t).coords) + (0, 0) for j in range(-k, k + 1, 2)}
    if f.kind in (DiffeoKind.COMPOSE, DiffeoKind.INVERSE):
        support = set()
        for child in f.children:
            support |= candidate_support(child)
        return support
    if f.kind is DiffeoKind.RELABEL:
        lattice = f.source.lattice
        return {tuple(f.psi.apply(lattice.vector(coords)).coords) for coords in candidate_support(f.children[0])}
    return set()


@dataclass
class OqSum:
    q: int
    bound: int
    total: CertifiedValue
    certified_sum: CertifiedValue
    contributions: List[Tuple[SpinCClass, CertifiedValue]] = field(default_factory=list)
    certified_count: int = 0
    unknown_count: int = 0
    support_captured: bool = False

    def contribution(self, s: SpinCClass) -> Optional[CertifiedValue]:
        for member, value in self.contributions:
            if member == s:
                return value
        return None

    def to_dict(self) -> dict:
        return {
            'q': self.q,
            'bound': self.bound,
            'total': self.total.to_dict(),
            'certified_sum': self.certified_sum.to_dict(),
            'certified_count': self.certified_count,
            'unknown_count': self.unknown_count,
            'support_captured': self.support_captured,
            'nonzero': [
                {'c': s.c.to_list(), **value.to_dict()}
                for s, value in self.contributions
                if value.is_certified and value.value
            ],
        }


def sw_OQ(f: DiffeoExpr, q: int, bound: int, engine: Optional[FamiliesEngine] = None,
          progress: bool = False) -> OqSum:
    """
    Sum of SW_{X,s}(f) over s in O_q with coordinates bounded by `bound`.

    Classes f does not fix contribute Unknown. Each fixed class is evaluated
    in the zero chamber when it is defined, otherwise in the constant chamber.

    Raises:
        PreconditionError: if b+(X) != 2, q is not odd or sgn+(f) != 1
    """
    oq = OqClass(q)
    X = f.source
    if invariants(X).b_plus != 2:
        raise PreconditionError(f"O_q sums need b+ = 2; {X} has b+ = {invariants(X).b_plus}")
    if f.sgn_plus != 1:
        raise PreconditionError(f"O_q sums are defined for sgn+(f) = 1, got {f.sgn_plus} for {f}")
    engine = default_engine() if engine is None else engine

    members = oq.members(X, bound)
    logger.info(f"========| O_{q}: {len(members)} classes with bound {bound} |========")

    total = CertifiedValue.integer(0)
    certified_sum = CertifiedValue.integer(0)
    result = OqSum(q=q, bound=bound, total=total, certified_sum=certified_sum)
    for s in tqdm(members, desc=f"O_{q}", disable=not progress):
        value = CertifiedValue.unknown()
        if preserves(f, s):
            for chamber in ChamberTag:
                if chamber_defined(X, s, f, chamber):
                    value = engine.evaluate(FamilyQuery(X, s, f, chamber))
                    break
        result.contributions.append((s, value))
        total = total + value
        if value.is_certified:
            certified_sum = certified_sum + value
            result.certified_count += 1
        else:
            result.unknown_count += 1

    result.total = total
    result.certified_sum = certified_sum
    candidates = [c for c in candidate_support(f) if divisibility(X.lattice.vector(c)) == q]
    result.support_captured = all(max(abs(x) for x in c) <= bound for c in candidates)
    if result.unknown_count:
        logger.warning(f"O_{q}: {result.unknown_count} of {len(members)} summands are Unknown")
    return result
