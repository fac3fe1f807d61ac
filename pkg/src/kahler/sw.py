"""
Chamber-wise Seiberg-Witten invariants of Kahler surfaces with b1 = 0, b+ = 1.

Implemented for E1 and the logarithmic transforms E1(m,n) in the fixed chart.
Classes are written s_L with c(s_L) = 2L - K. A value of None means the
decision procedure cannot determine the invariant.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Tuple
import logging

import sympy

from .semigroup import NumericalSemigroup
from ..config import CHART
from ..errors import ChamberUndefinedError, ManifoldError
from ..lattice import LatticeVector, pair
from ..manifolds import Atom, AtomKind, E1LogModel, chart_lattice, fiber_class

logger = logging.getLogger(__name__)


class WallSide(str, Enum):
    PLUS = 'plus'
    MINUS = 'minus'
    ON_WALL = 'on_wall'


@dataclass(frozen=True)
class LineBundleClass:
    L: LatticeVector

    @property
    def fiber_multiple(self) -> Optional[int]:
        return fiber_multiple(self.L)

    def __str__(self):
        a = self.fiber_multiple
        if a is None:
            return str(self.L)
        return "0" if a == 0 else f"{a}t'"


def fiber_multiple(L: LatticeVector) -> Optional[int]:
    """a with L = a t', or None when L is off the fiber line."""
    t = fiber_class()
    if L.parent != t.parent:
        return None
    a, remainder = divmod(L.coords[0], t.coords[0])
    if remainder or a * t != L:
        return None
    return a


def _default_omega() -> Tuple[sympy.Rational, ...]:
    numerator, denominator = CHART['omega']
    return (sympy.Rational(numerator, denominator),) + (sympy.Rational(0),) * 9


@dataclass(frozen=True)
class KahlerModel:
    """
    A b+ = 1 Kahler surface in the chart: canonical class, Kahler class and PSC flag.

    omega is normalized so that deg_omega(t') = 1.
    """
    surface: Atom
    K: LatticeVector
    omega: Tuple[sympy.Rational, ...]
    psc: bool

    def __post_init__(self):
        if not self.surface.is_elliptic:
            raise ManifoldError(f"No Kahler model for {self.surface}")
        if self.K.parent != chart_lattice():
            raise ManifoldError("Canonical class must live in the E1 chart")
        object.__setattr__(self, 'omega', tuple(sympy.Rational(x) for x in self.omega))
        if len(self.omega) != self.K.parent.rank:
            raise ManifoldError("Kahler class has the wrong length")
        if self.deg(fiber_class()) != 1:
            raise ManifoldError("Kahler class must satisfy deg(t') = 1")

    @classmethod
    def for_atom(cls, atom: Atom) -> 'KahlerModel':
        """The model of E1 (K = -t', PSC) or E1(m,n) (K = (mn-m-n) t')."""
        if atom.kind is AtomKind.E1:
            model = cls(atom, -fiber_class(), _default_omega(), psc=True)
        elif atom.kind is AtomKind.E1LOG:
            model = cls(atom, E1LogModel.for_atom(atom).K, _default_omega(), psc=False)
        else:
            raise ManifoldError(f"No Kahler model for {atom}")

        b_minus = model.K.parent.b_minus
        if model.K.square != 9 - b_minus:
            raise ManifoldError(f"{atom}: Noether's formula fails (K^2 = {model.K.square}, b- = {b_minus})")
        if atom.kind is AtomKind.E1LOG:
            k = E1LogModel.for_atom(atom).k
            if k <= 0 or model.deg(model.K) != k:
                raise ManifoldError(f"{atom}: expected deg(K) = mn - m - n > 0, got {model.deg(model.K)}")
        return model

    @property
    def semigroup(self) -> Optional[NumericalSemigroup]:
        if self.surface.kind is AtomKind.E1LOG:
            return NumericalSemigroup(self.surface.m, self.surface.n)
        return None

    def deg(self, L: LatticeVector) -> sympy.Rational:
        G = L.parent.gram
        return sum((self.omega[i] * sum(G[i][j] * L.coords[j] for j in range(L.parent.rank))
                    for i in range(L.parent.rank)), sympy.Rational(0))

    def line_bundle(self, a: int) -> LatticeVector:
        return a * fiber_class()

    def line_bundle_of(self, c: LatticeVector) -> LatticeVector:
        """L with c = 2L - K."""
        shifted = c + self.K
        if any(x % 2 for x in shifted.coords):
            raise ManifoldError(f"{c} is not of the form 2L - K")
        return shifted.parent.vector(x // 2 for x in shifted.coords)

    def spinc_vector(self, L: LatticeVector) -> LatticeVector:
        return 2 * L - self.K


def _dimension_term(model: KahlerModel, L: LatticeVector) -> int:
    """L^2 - K L, the expected dimension of s_L."""
    return pair(L, L) - pair(model.K, L)


def riemann_roch_chi(model: KahlerModel, L: LatticeVector) -> int:
    """h0 - h1 + h2 = 1 + (L^2 - K L) / 2."""
    value = _dimension_term(model, L)
    if value % 2:
        raise ManifoldError(f"L^2 - KL = {value} is odd; K is not characteristic for this input")
    return 1 + value // 2


def h0_positive(model: KahlerModel, L: LatticeVector) -> Optional[bool]:
    """
    Whether h0(L) > 0, on the classes where it is decidable.

    h0(O) = 1 and h0(K) = 0 always; on E1(m,n), h0(a t') > 0 iff a lies in <m,n>.
    """
    if L.is_zero:
        return True
    if L == model.K:
        return False
    semigroup = model.semigroup
    if semigroup is None:
        return None
    a = fiber_multiple(L)
    if a is None:
        return None
    return semigroup.contains(a)


def wall_side(model: KahlerModel, L: LatticeVector) -> WallSide:
    """Chamber of the zero perturbation for s_L, from the sign of deg K - 2 deg L."""
    gap = model.deg(model.K) - 2 * model.deg(L)
    if gap > 0:
        return WallSide.PLUS
    if gap < 0:
        return WallSide.MINUS
    return WallSide.ON_WALL


def sw_chambered(model: KahlerModel, L: LatticeVector, chamber: WallSide) -> Optional[int]:
    """SW in the + or - chamber."""
    if chamber is WallSide.ON_WALL:
        raise ChamberUndefinedError("There is no invariant on the wall")
    if _dimension_term(model, L) < 0:
        return 0
    effective = h0_positive(model, L)
    if effective is None:
        return None
    if effective:
        return 1 if chamber is WallSide.PLUS else 0
    # exactly one of h0(L), h2(L) is positive
    return 0 if chamber is WallSide.PLUS else -1


def zero_chamber_defined(model: KahlerModel, L: LatticeVector) -> bool:
    c = model.spinc_vector(L)
    return c.square >= 0 and not c.is_zero and wall_side(model, L) is not WallSide.ON_WALL


def sw_zero_chamber(model: KahlerModel, L: LatticeVector) -> Optional[int]:
    """
    SW in the chamber of the zero perturbation.

    Raises:
        ChamberUndefinedError: if (2L - K)^2 < 0, 2L - K = 0, or the zero
            perturbation lies on the wall
    """
    c = model.spinc_vector(L)
    if c.square < 0 or c.is_zero:
        raise ChamberUndefinedError(f"Zero chamber undefined for c = {c} (c^2 = {c.square})")
    if wall_side(model, L) is WallSide.ON_WALL:
        raise ChamberUndefinedError(f"Zero perturbation lies on the wall for L = {L}")

    if model.psc:
        return 0
    if _dimension_term(model, L) < 0:
        return 0

    if fiber_multiple(L) is None and model.semigroup is not None:
        # nonzero values only occur on L = tK with 0 <= t <= 1
        return 0

    effective = h0_positive(model, L)
    if effective is None:
        return None
    deg_L, deg_K = model.deg(L), model.deg(model.K)
    if effective and 0 <= deg_L < deg_K / 2:
        return 1
    if not effective and deg_K / 2 < deg_L <= deg_K:
        return -1
    return 0


@lru_cache(maxsize=None)
def zero_chamber_value(atom: Atom, c: LatticeVector) -> Optional[int]:
    """SW^0 of the atom at the class with characteristic c. Cached for the families engine."""
    model = KahlerModel.for_atom(atom)
    return sw_zero_chamber(model, model.line_bundle_of(c))


def basic_classes_zero(model: KahlerModel, bound: int = 0) -> List[Tuple[LineBundleClass, int]]:
    """
    The L = a t' with nonzero SW^0, scanning k + 1 + 2 * bound values of a
    centered on 0 <= a <= k.
    """
    semigroup = model.semigroup
    if semigroup is None:
        raise ManifoldError(f"Basic classes are tabulated for E1(m,n) only, not {model.surface}")
    k = int(model.deg(model.K))
    table = []
    for a in range(-bound, k + bound + 1):
        L = model.line_bundle(a)
        value = sw_zero_chamber(model, L)
        if value:
            table.append((LineBundleClass(L), value))
    logger.info(f"{model.surface}: {len(table)} basic classes in the zero chamber")
    return table


def kahler_record(model: KahlerModel, L: LatticeVector) -> dict:
    """All chamber values of s_L as a JSON-ready record; None stands for unknown."""
    defined = zero_chamber_defined(model, L)
    return {
        'surface': str(model.surface),
        'L': L.to_list(),
        'a': fiber_multiple(L),
        'd': _dimension_term(model, L),
        'chi': riemann_roch_chi(model, L),
        'h0_positive': h0_positive(model, L),
        'wall_side': wall_side(model, L).value,
        'plus': sw_chambered(model, L, WallSide.PLUS),
        'minus': sw_chambered(model, L, WallSide.MINUS),
        'zero_defined': defined,
        'zero': sw_zero_chamber(model, L) if defined else None,
    }
