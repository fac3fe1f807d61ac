"""
Rewrite engine for 1-parameter families Seiberg-Witten invariants (b+ = 2).

A query (X, s, f, chamber) is answered by the first applicable rule in the
configured order:

    R0  f = id                                     -> 0
    R1  zero chamber, X = X' # S2xS2, f = f' # g,
        sgn+(g) = -1, s = s' # s0 with c(s0) = 0   -> SW^0(X', s') mod 2
    R2  constant chamber, X = X' # CP2bar,
        f = f' # g both Torelli, c(kappa)^2 = -1    -> SW^c(X', s', f')
    R3  f = f1 o f2, both preserving s (and both
        Torelli in the constant chamber)           -> SW(f1) + SW(f2)
    R4  f = psi f' psi^-1                          -> sgn+(psi) SW_{psi^-1 s}(f')
    R5  f = inv(f')                                -> -SW(f')
    RC  constant chamber with zero chamber defined -> SW^0(f)

and Unknown when nothing applies. Integer values degrade to mod 2 at every
node where sgn+(f) = -1.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple
import logging

from .certified import CertifiedValue, Derivation, ValueKind
from .diffeo import DiffeoExpr, DiffeoKind, preserves
from ..config import RULE_PRIORITY
from ..errors import CertificateError, ChamberUndefinedError, PreconditionError
from ..kahler import zero_chamber_value
from ..lattice import sgn_plus
from ..manifolds import (
    AtomKind,
    ManifoldExpr,
    SpinCClass,
    chart_lattice,
    expected_dimension,
    invariants,
)

logger = logging.getLogger(__name__)

RULES = ('R0', 'R1', 'R2', 'R3', 'R4', 'R5', 'RC')


class ChamberTag(str, Enum):
    ZERO = 'zero'
    CONSTANT = 'constant'


@dataclass(frozen=True)
class FamilyQuery:
    manifold: ManifoldExpr
    spinc: SpinCClass
    diffeo: DiffeoExpr
    chamber: ChamberTag

    def __post_init__(self):
        object.__setattr__(self, 'chamber', ChamberTag(self.chamber))

    def describe(self) -> str:
        return f"SW^{self.chamber.value}[{self.manifold}; c = {self.spinc}]({self.diffeo})"


# ---- rule hypotheses (shared with replay) ---------------------------------

def _zero_chamber_ok(s: SpinCClass) -> bool:
    # c(s) is never torsion on these lattices, so non-torsion means non-zero
    return s.square >= 0 and not s.c.is_zero


def _split_last(query: FamilyQuery, kind: AtomKind):
    """(f', g, s', s_last) when f = f' # g with g on a single `kind` summand."""
    f = query.diffeo
    if f.kind is not DiffeoKind.CONNSUM:
        return None
    g = f.right
    if len(g.source) != 1 or g.source.summands[0].kind is not kind:
        return None
    s_prime, s_last = query.spinc.split(len(query.manifold) - 1)
    return f.left, g, s_prime, s_last


def _collapse_hypotheses(query: FamilyQuery):
    if query.chamber is not ChamberTag.ZERO:
        return None
    parts = _split_last(query, AtomKind.S2xS2)
    if parts is None:
        return None
    f_prime, g, s_prime, s_zero = parts
    if not s_zero.c.is_zero or query.spinc.square < 0:
        return None
    if g.sgn_plus != -1 or not preserves(f_prime, s_prime):
        return None
    return f_prime, s_prime


def _blowup_hypotheses(query: FamilyQuery):
    if query.chamber is not ChamberTag.CONSTANT:
        return None
    parts = _split_last(query, AtomKind.CP2BAR)
    if parts is None:
        return None
    f_prime, g, s_prime, kappa = parts
    if kappa.square != -1 or not (f_prime.is_torelli and g.is_torelli):
        return None
    return f_prime, s_prime


def _composition_hypotheses(query: FamilyQuery):
    f = query.diffeo
    if f.kind is not DiffeoKind.COMPOSE:
        return None
    first, second = f.children
    if not (preserves(first, query.spinc) and preserves(second, query.spinc)):
        return None
    if query.chamber is ChamberTag.CONSTANT and not (first.is_torelli and second.is_torelli):
        return None
    return first, second


def _relabel_hypotheses(query: FamilyQuery):
    f = query.diffeo
    if f.kind is not DiffeoKind.RELABEL:
        return None
    conjugand = f.children[0]
    pulled = f.psi.inverse().apply(query.spinc.c)
    s_pulled = SpinCClass(conjugand.source, conjugand.source.lattice.vector(pulled.coords))
    return conjugand, s_pulled, sgn_plus(f.psi)


def summand_zero_chamber(manifold: ManifoldExpr, s: SpinCClass) -> Optional[Tuple[int, str]]:
    """
    SW^0 of a b+ = 1 summand, with the fact that decides it.

    PSC sums vanish; E1 and E1(m,n) go through the Kahler decision procedure.
    None when neither applies or the value is undetermined.
    """
    inv = invariants(manifold)
    if inv.b_plus != 1:
        return None
    if inv.is_psc:
        return 0, f"psc_vanishing[{manifold}]"
    if len(manifold) == 1 and manifold.summands[0].is_elliptic:
        atom = manifold.summands[0]
        try:
            value = zero_chamber_value(atom, chart_lattice().vector(s.c.coords))
        except ChamberUndefinedError:
            return None
        if value is None:
            return None
        return value, f"kahler_zero_chamber[{atom}]={value}"
    return None


# ---- engine ---------------------------------------------------------------

def chamber_defined(manifold: ManifoldExpr, s: SpinCClass, f: DiffeoExpr, chamber) -> bool:
    """
    ZERO: c(s)^2 >= 0 and c(s) non-torsion. CONSTANT: f is Torelli.

    Raises:
        PreconditionError: if b+(X) != 2 or d(s) != -1
    """
    inv = invariants(manifold)
    if inv.b_plus != 2:
        raise PreconditionError(f"Families invariants need b+ = 2; {manifold} has b+ = {inv.b_plus}")
    dimension = expected_dimension(manifold, s)
    if dimension != -1:
        raise PreconditionError(f"Families invariants need d(s) = -1, got {dimension} for c = {s}")
    if ChamberTag(chamber) is ChamberTag.ZERO:
        return _zero_chamber_ok(s)
    return f.is_torelli


class FamiliesEngine:
    """
    Evaluates families queries by rewriting, memoizing every answered query.

    Args:
        rule_order: permutation of R0..R5 and RC
        mod2: coerce every node to a mod-2 value
    """

    def __init__(self, rule_order: Sequence[str] = RULE_PRIORITY, mod2: bool = False):
        order = tuple(rule_order)
        if sorted(order) != sorted(RULES):
            raise PreconditionError(f"Rule order must be a permutation of {', '.join(RULES)}, got {order}")
        self.rule_order = order
        self.mod2 = mod2
        self._memo: Dict[FamilyQuery, CertifiedValue] = {}
        self._rules = {
            'R0': self._identity,
            'R1': self._collapse,
            'R2': self._blowup,
            'R3': self._composition,
            'R4': self._relabel,
            'R5': self._inverse,
            'RC': self._coincidence,
        }
        logger.info(f"Families engine rule order: {' > '.join(order)}{' (mod 2 mode)' if mod2 else ''}")

    def validate(self, query: FamilyQuery):
        X, s, f = query.manifold, query.spinc, query.diffeo
        if f.source != X or s.manifold != X:
            raise PreconditionError(f"Query mixes manifolds: f on {f.source}, s on {s.manifold}, X = {X}")
        defined = chamber_defined(X, s, f, query.chamber)
        if not preserves(f, s):
            raise PreconditionError(f"{f} does not preserve the class {s}")
        if not defined:
            raise ChamberUndefinedError(f"The {query.chamber.value} chamber is not defined for {query.describe()}")

    def evaluate(self, query: FamilyQuery) -> CertifiedValue:
        self.validate(query)
        return self._evaluate(query)

    def __len__(self) -> int:
        return len(self._memo)

    def clear(self):
        """Forget every memoized query."""
        logger.debug(f"Dropping {len(self._memo)} memoized queries")
        self._memo.clear()

    def _evaluate(self, query: FamilyQuery) -> CertifiedValue:
        cached = self._memo.get(query)
        if cached is not None:
            return cached

        for rule in self.rule_order:
            step = self._rules[rule](query)
            if step is not None:
                value, facts, children = step
                break
        else:
            rule, value, facts, children = 'FALLBACK', CertifiedValue.unknown(), (), ()

        if self.mod2 or query.diffeo.sgn_plus == -1:
            value = value.reduced()
        derivation = Derivation(
            rule=rule,
            kind=value.kind,
            value=value.value,
            query=query,
            facts=tuple(facts),
            children=tuple(child.derivation for child in children),
            mod2_mode=self.mod2,
        )
        result = value.with_derivation(derivation)
        if not result.is_certified:
            logger.debug(f"No rule determines {query.describe()}")
        return self._memo.setdefault(query, result)

    def _sub(self, query: FamilyQuery, **changes) -> CertifiedValue:
        fields = {
            'manifold': query.manifold,
            'spinc': query.spinc,
            'diffeo': query.diffeo,
            'chamber': query.chamber,
        }
        fields.update(changes)
        return self._evaluate(FamilyQuery(**fields))

    # ---- rules: each returns (value, facts, child results) or None ----

    def _identity(self, query):
        if query.diffeo.kind is not DiffeoKind.IDENTITY:
            return None
        return CertifiedValue.integer(0), ("product family is constant",), ()

    def _collapse(self, query):
        hypotheses = _collapse_hypotheses(query)
        if hypotheses is None:
            return None
        f_prime, s_prime = hypotheses
        leaf = summand_zero_chamber(f_prime.source, s_prime)
        if leaf is None:
            return None
        value, fact = leaf
        return CertifiedValue.mod2(value % 2), ("s2xs2_collapse", fact), ()

    def _blowup(self, query):
        hypotheses = _blowup_hypotheses(query)
        if hypotheses is None:
            return None
        f_prime, s_prime = hypotheses
        child = self._sub(query, manifold=f_prime.source, spinc=s_prime, diffeo=f_prime)
        return CertifiedValue(child.kind, child.value), ("blowup_formula",), (child,)

    def _composition(self, query):
        hypotheses = _composition_hypotheses(query)
        if hypotheses is None:
            return None
        first, second = hypotheses
        a = self._sub(query, diffeo=first)
        b = self._sub(query, diffeo=second)
        return a + b, ("homomorphism",), (a, b)

    def _relabel(self, query):
        hypotheses = _relabel_hypotheses(query)
        if hypotheses is None:
            return None
        conjugand, s_pulled, sign = hypotheses
        child = self._sub(query, manifold=conjugand.source, spinc=s_pulled, diffeo=conjugand)
        facts = (f"sgn+({query.diffeo.psi_name}) = {sign}", "mcg_surjective")
        return child.scaled(sign), facts, (child,)

    def _inverse(self, query):
        if query.diffeo.kind is not DiffeoKind.INVERSE:
            return None
        child = self._sub(query, diffeo=query.diffeo.children[0])
        return -child, ("homomorphism",), (child,)

    def _coincidence(self, query):
        if query.chamber is not ChamberTag.CONSTANT or not _zero_chamber_ok(query.spinc):
            return None
        child = self._sub(query, chamber=ChamberTag.ZERO)
        return CertifiedValue(child.kind, child.value), ("constant_zero_coincidence",), (child,)


_default_engine: Optional[FamiliesEngine] = None


def default_engine() -> FamiliesEngine:
    global _default_engine
    if _default_engine is None:
        _default_engine = FamiliesEngine()
    return _default_engine


def sw_family(manifold: ManifoldExpr, s: SpinCClass, f: DiffeoExpr, chamber,
              engine: Optional[FamiliesEngine] = None) -> CertifiedValue:
    """Families invariant SW^chamber_{X,s}(f) as a certified value."""
    engine = default_engine() if engine is None else engine
    result = engine.evaluate(FamilyQuery(manifold, s, f, ChamberTag(chamber)))
    if not result.is_certified:
        logger.warning(f"Unknown: no rule applies to {result.derivation.query.describe()}")
    return result


def chamber_coincidence_check(manifold: ManifoldExpr, s: SpinCClass, f: DiffeoExpr,
                              engine: Optional[FamiliesEngine] = None) -> bool:
    """
    Evaluate in both distinguished chambers and compare.

    Raises:
        ChamberUndefinedError: unless both chambers are defined
    """
    engine = default_engine() if engine is None else engine
    for chamber in ChamberTag:
        if not chamber_defined(manifold, s, f, chamber):
            raise ChamberUndefinedError(f"The {chamber.value} chamber is not defined")
    zero = engine.evaluate(FamilyQuery(manifold, s, f, ChamberTag.ZERO))
    constant = engine.evaluate(FamilyQuery(manifold, s, f, ChamberTag.CONSTANT))
    agree = zero.agrees_with(constant)
    if not agree:
        logger.warning(f"Chamber mismatch on {f}: zero {zero}, constant {constant}")
    return agree


# ---- replay ---------------------------------------------------------------

def _require(condition, node: Derivation, message: str):
    if not condition:
        raise CertificateError(f"{node.rule} at {node.query.describe()}: {message}")


def _child_query(node: Derivation, index: int) -> FamilyQuery:
    _require(len(node.children) > index, node, "missing sub-derivation")
    return node.children[index].query


def _replay_node(node: Derivation) -> CertifiedValue:
    query = node.query
    _require(query is not None, node, "derivation step has no query")
    children = [_replay_node(child) for child in node.children]

    def expect_child(index, **changes):
        fields = {'manifold': query.manifold, 'spinc': query.spinc,
                  'diffeo': query.diffeo, 'chamber': query.chamber}
        fields.update(changes)
        _require(_child_query(node, index) == FamilyQuery(**fields), node,
                 f"sub-derivation {index} answers a different query")

    rule = node.rule
    if rule == 'R0':
        _require(query.diffeo.kind is DiffeoKind.IDENTITY, node, "diffeomorphism is not the identity")
        value = CertifiedValue.integer(0)
    elif rule == 'R1':
        hypotheses = _collapse_hypotheses(query)
        _require(hypotheses is not None, node, "S2xS2 collapse hypotheses fail")
        f_prime, s_prime = hypotheses
        leaf = summand_zero_chamber(f_prime.source, s_prime)
        _require(leaf is not None, node, "summand invariant is undetermined")
        value = CertifiedValue.mod2(leaf[0] % 2)
    elif rule == 'R2':
        hypotheses = _blowup_hypotheses(query)
        _require(hypotheses is not None, node, "blowup hypotheses fail")
        f_prime, s_prime = hypotheses
        expect_child(0, manifold=f_prime.source, spinc=s_prime, diffeo=f_prime)
        value = CertifiedValue(children[0].kind, children[0].value)
    elif rule == 'R3':
        hypotheses = _composition_hypotheses(query)
        _require(hypotheses is not None, node, "composition hypotheses fail")
        expect_child(0, diffeo=hypotheses[0])
        expect_child(1, diffeo=hypotheses[1])
        value = children[0] + children[1]
    elif rule == 'R4':
        hypotheses = _relabel_hypotheses(query)
        _require(hypotheses is not None, node, "not a relabelling")
        conjugand, s_pulled, sign = hypotheses
        expect_child(0, manifold=conjugand.source, spinc=s_pulled, diffeo=conjugand)
        value = children[0].scaled(sign)
    elif rule == 'R5':
        _require(query.diffeo.kind is DiffeoKind.INVERSE, node, "not an inverse")
        expect_child(0, diffeo=query.diffeo.children[0])
        value = -children[0]
    elif rule == 'RC':
        _require(query.chamber is ChamberTag.CONSTANT and _zero_chamber_ok(query.spinc), node,
                 "zero chamber is not defined")
        expect_child(0, chamber=ChamberTag.ZERO)
        value = CertifiedValue(children[0].kind, children[0].value)
    elif rule == 'FALLBACK':
        value = CertifiedValue.unknown()
    else:
        raise CertificateError(f"Unknown rule '{rule}' in derivation")

    if node.mod2_mode or query.diffeo.sgn_plus == -1:
        value = value.reduced()
    _require((value.kind, value.value) == (node.kind, node.value), node,
             f"replay gives {value}, derivation records {node.kind.value} {node.value}")
    return value


def replay(result: CertifiedValue) -> CertifiedValue:
    """
    Re-derive a certified value from its derivation tree, re-checking every
    rule hypothesis and re-querying every summand invariant.

    Raises:
        CertificateError: on any mismatch
    """
    if result.derivation is None:
        raise CertificateError("Value carries no derivation to replay")
    recomputed = _replay_node(result.derivation)
    if recomputed != result:
        raise CertificateError(f"Replay gives {recomputed}, value is {result}")
    return recomputed
