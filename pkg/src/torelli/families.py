"""
The Torelli diffeomorphisms t_d of X = E1 # S2xS2 and their blowup lifts.

For odd d, X_d = E1(2, d+2) # S2xS2 is identified with X through the fixed
chart, so psi_d is the identity matrix and

    f0 = id_E1 # rho,    fd = psi_d (id_{E1(2,d+2)} # rho) psi_d^-1,    td = fd o f0,
    c(s_d) = -d t' (+) 0.
"""
from dataclasses import dataclass
from typing import Optional, Tuple
import logging

from ..config import NAMED_FACTS
from ..errors import CertificateError, PreconditionError
from ..families import (
    CertifiedValue,
    ChamberTag,
    DiffeoExpr,
    FamiliesEngine,
    FamilyQuery,
    default_engine,
    preserves,
)
from ..lattice import LatticeAutomorphism, divisibility
from ..manifolds import (
    Atom,
    AtomKind,
    ManifoldExpr,
    SpinCClass,
    connected_sum_spinc,
    expected_dimension,
    fiber_class,
    lattice_of,
)

logger = logging.getLogger(__name__)

E1 = ManifoldExpr.of(Atom(AtomKind.E1))
S2xS2 = ManifoldExpr.of(Atom(AtomKind.S2xS2))
CP2BAR = ManifoldExpr.of(Atom(AtomKind.CP2BAR))


def base_manifold() -> ManifoldExpr:
    """E1 # S2xS2, a presentation of 2CP2 # 10CP2bar."""
    return E1.connect(S2xS2)


def fiber_spinc(manifold: ManifoldExpr, j: int) -> SpinCClass:
    """The class j t' (+) 0 on an elliptic atom summed with S2xS2."""
    return SpinCClass(manifold, manifold.lattice.vector(tuple((j * fiber_class()).coords) + (0, 0)))


@dataclass(frozen=True)
class TdFamily:
    d: int
    X: ManifoldExpr
    Xd: ManifoldExpr
    psi_d: LatticeAutomorphism
    f0: DiffeoExpr
    fd: DiffeoExpr
    td: DiffeoExpr
    sd: SpinCClass
    facts: Tuple[str, ...] = ()

    def check(self):
        """Raise CertificateError unless the family has all of its defining properties."""
        checks = {
            'td is Torelli': self.td.is_torelli,
            f'divisibility(c(s_d)) = {self.d}': divisibility(self.sd.c) == self.d,
            'c(s_d)^2 = 0': self.sd.square == 0,
            'f0 preserves s_d': preserves(self.f0, self.sd),
            'fd preserves s_d': preserves(self.fd, self.sd),
            'sgn+(f0) = -1': self.f0.sgn_plus == -1,
            'sgn+(fd) = -1': self.fd.sgn_plus == -1,
            'd(s_d) = -1': expected_dimension(self.X, self.sd) == -1,
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise CertificateError(f"t_{self.d} fails: {', '.join(failed)}")

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'X': str(self.X),
            'Xd': str(self.Xd),
            'psi_d': self.psi_d.to_list(),
            'f0': str(self.f0),
            'fd': str(self.fd),
            'td': str(self.td),
            'induced': {
                'f0': self.f0.induced.to_list(),
                'fd': self.fd.induced.to_list(),
                'td': self.td.induced.to_list(),
            },
            'c_sd': self.sd.c.to_list(),
            'divisibility': divisibility(self.sd.c),
            'sgn_plus': {'f0': self.f0.sgn_plus, 'fd': self.fd.sgn_plus},
            'td_torelli': self.td.is_torelli,
            'facts': {name: NAMED_FACTS[name] for name in self.facts},
        }


def build_td(d: int) -> TdFamily:
    """Construct t_d and s_d for odd d >= 1."""
    if d < 1 or d % 2 == 0:
        raise PreconditionError(f"t_d is defined for odd d >= 1, got {d}")

    X = base_manifold()
    elliptic = ManifoldExpr.of(Atom.e1log(2, d + 2))
    Xd = elliptic.connect(S2xS2)
    psi_d = lattice_of(X).identity()

    f0 = DiffeoExpr.conn_sum(DiffeoExpr.identity(E1), DiffeoExpr.rho(S2xS2, 1))
    inner = DiffeoExpr.conn_sum(DiffeoExpr.identity(elliptic), DiffeoExpr.rho(S2xS2, 1))
    fd = DiffeoExpr.relabel(psi_d, inner, X, name=f"psi_{d}")
    td = DiffeoExpr.compose(fd, f0)

    family = TdFamily(
        d=d, X=X, Xd=Xd, psi_d=psi_d, f0=f0, fd=fd, td=td,
        sd=fiber_spinc(X, -d),
        facts=('wall_stabilization', 'elliptic_dissolution', 'mcg_surjective', 'divisibility_orbits'),
    )
    family.check()
    logger.info(f"Built t_{d} on {X} through {Xd}")
    return family


@dataclass(frozen=True)
class BlowupLevel:
    blowups: int
    manifold: ManifoldExpr
    spinc: SpinCClass
    diffeo: DiffeoExpr
    value: CertifiedValue
    dimension: int

    def to_dict(self) -> dict:
        return {
            'blowups': self.blowups,
            'manifold': str(self.manifold),
            'c': self.spinc.c.to_list(),
            'diffeo': str(self.diffeo),
            'd': self.dimension,
            **self.value.to_dict(),
        }


@dataclass(frozen=True)
class LiftedFamily:
    base: TdFamily
    base_value: CertifiedValue
    levels: Tuple[BlowupLevel, ...]

    @property
    def top(self) -> BlowupLevel:
        return self.levels[-1]

    def to_dict(self) -> dict:
        return {
            'd': self.base.d,
            'base_value': self.base_value.to_dict(),
            'levels': [level.to_dict() for level in self.levels],
        }


def blowup_lift(family: TdFamily, times: int, engine: Optional[FamiliesEngine] = None,
                kappa: int = 1) -> LiftedFamily:
    """
    Lift t_d to X # times CP2bar by t_d # id # ... # id with classes s_d # kappa.

    Each level is evaluated in the constant chamber and must reproduce the
    value of t_d itself.

    Raises:
        CertificateError: if a level changes the value or leaves d(s) = -1
    """
    if times < 1:
        raise PreconditionError(f"times must be at least 1, got {times}")
    if kappa not in (1, -1):
        raise PreconditionError(f"kappa must be +-1 on CP2bar, got {kappa}")
    engine = default_engine() if engine is None else engine

    base_value = engine.evaluate(FamilyQuery(family.X, family.sd, family.td, ChamberTag.CONSTANT))
    kappa_class = SpinCClass.from_coords(CP2BAR, (kappa,))

    manifold, spinc, diffeo = family.X, family.sd, family.td
    levels = []
    for level in range(1, times + 1):
        manifold = manifold.connect(CP2BAR)
        spinc = connected_sum_spinc(spinc, kappa_class)
        diffeo = DiffeoExpr.conn_sum(diffeo, DiffeoExpr.identity(CP2BAR))

        dimension = expected_dimension(manifold, spinc)
        value = engine.evaluate(FamilyQuery(manifold, spinc, diffeo, ChamberTag.CONSTANT))
        if dimension != -1:
            raise CertificateError(f"t_{family.d} lifted {level} times: d(s) = {dimension}")
        if value != base_value:
            raise CertificateError(f"t_{family.d} lifted {level} times: value {value} differs from {base_value}")
        levels.append(BlowupLevel(level, manifold, spinc, diffeo, value, dimension))
        logger.info(f"t_{family.d} # {level} CP2bar: {value}")

    return LiftedFamily(family, base_value, tuple(levels))
