"""
Grammars for manifold, diffeomorphism and vector expressions.

    manifold   := term ('#' term)*          term := [count] atom
    atom       := CP2 | CP2bar | S2xS2 | K3 | E1 | E1(m,n)
    diffeo     := connsum ('*' connsum)*    connsum := unary ('#' unary)*
    unary      := id | rho@k | inv(diffeo) | conj(PSI, diffeo[, manifold]) | (diffeo)
    vector     := ['['] int (',' int)* [']']

In `f0 # f1 # ... # fn` every operand after the first acts on a single
summand, taken in order from the end of the source; f0 acts on the rest.
"""
from typing import Dict, Mapping, Optional, Union
import logging

import numpy as np
from arpeggio import EOF, NoMatch, NonTerminal, Optional as Maybe, ParserPython, Terminal, ZeroOrMore
from arpeggio import RegExMatch as _

from ..errors import ManifoldError, ParseError, SWCalcError
from ..families import DiffeoExpr
from ..lattice import IntersectionLattice, LatticeAutomorphism, LatticeVector
from ..manifolds import Atom, AtomKind, ManifoldExpr

logger = logging.getLogger(__name__)


# ---- grammar ------------------------------------------------------------

def integer():
    return _(r'\d+')


def signed_integer():
    return _(r'[+-]?\d+')


def e1log():
    return _(r'E1\b'), "(", integer, ",", integer, ")"


def atom():
    return [e1log, _(r'CP2bar\b'), _(r'CP2\b'), _(r'S2xS2\b'), _(r'K3\b'), _(r'E1\b')]


def term():
    return Maybe(integer), atom


def manifold_expr():
    return term, ZeroOrMore("#", term)


def manifold_root():
    return manifold_expr, EOF


def identity():
    return _(r'id\b')


def rho():
    return _(r'rho\b'), "@", integer


def inverse():
    return _(r'inv\b'), "(", diffeo_expr, ")"


def psi_name():
    return _(r'[A-Za-z_][A-Za-z0-9_]*')


def conj():
    return _(r'conj\b'), "(", psi_name, ",", diffeo_expr, Maybe(",", manifold_expr), ")"


def unary():
    return [identity, rho, inverse, conj, ("(", diffeo_expr, ")")]


def connsum():
    return unary, ZeroOrMore("#", unary)


def diffeo_expr():
    return connsum, ZeroOrMore("*", connsum)


def diffeo_root():
    return diffeo_expr, EOF


def vector():
    return Maybe("["), signed_integer, ZeroOrMore(",", signed_integer), Maybe("]")


def vector_root():
    return vector, EOF


_NAMED = {
    'integer', 'signed_integer', 'e1log', 'atom', 'term', 'manifold_expr', 'identity', 'rho',
    'inverse', 'psi_name', 'conj', 'unary', 'connsum', 'diffeo_expr', 'vector',
}

_PARSERS = {}


def _parser(root) -> ParserPython:
    if root.__name__ not in _PARSERS:
        _PARSERS[root.__name__] = ParserPython(root)
    return _PARSERS[root.__name__]


# ---- parse-tree helpers ---------------------------------------------------

def _offset(text: str, position: int) -> int:
    return len(text[:position].encode('utf-8'))


def _parse(root, text: str, what: str):
    try:
        return _parser(root).parse(text)
    except NoMatch as e:
        raise ParseError(f"Invalid {what} '{text}': {e}", _offset(text, e.position)) from None


def _parts(node):
    """Named sub-nodes of node, with anonymous groupings flattened."""
    if isinstance(node, Terminal):
        return
    for child in node:
        if child.rule_name in _NAMED:
            yield child
        elif isinstance(child, NonTerminal):
            yield from _parts(child)


def _named(node, name: str):
    return [part for part in _parts(node) if part.rule_name == name]


def _text(node) -> str:
    if isinstance(node, Terminal):
        return node.value
    return ''.join(_text(child) for child in node)


# ---- manifolds ------------------------------------------------------------

_ATOM_KINDS = {
    'CP2': AtomKind.CP2,
    'CP2bar': AtomKind.CP2BAR,
    'S2xS2': AtomKind.S2xS2,
    'K3': AtomKind.K3,
    'E1': AtomKind.E1,
}


def _build_atom(node, text: str) -> Atom:
    log_nodes = [node] if node.rule_name == 'e1log' else _named(node, 'e1log')
    if log_nodes:
        m, n = (int(part.value) for part in _named(log_nodes[0], 'integer'))
        try:
            return Atom.e1log(m, n)
        except ManifoldError as e:
            raise ParseError(str(e), _offset(text, node.position)) from None
    return Atom(_ATOM_KINDS[_text(node).strip()])


def _build_manifold(node, text: str) -> ManifoldExpr:
    summands = []
    for term_node in _named(node, 'term'):
        counts = _named(term_node, 'integer')
        count = int(counts[0].value) if counts else 1
        if count < 1:
            raise ParseError("Repetition count must be positive", _offset(text, term_node.position))
        atom_node = next(part for part in _parts(term_node) if part.rule_name in ('atom', 'e1log'))
        summands.extend([_build_atom(atom_node, text)] * count)
    try:
        return ManifoldExpr(tuple(summands))
    except ManifoldError as e:
        raise ParseError(str(e), _offset(text, node.position)) from None


def parse_manifold(text: str) -> ManifoldExpr:
    """
    Parse a connected sum such as "2CP2 # 10CP2bar" or "E1(2,5) # S2xS2".

    Raises:
        ParseError: on syntax errors or invalid E1(m,n) parameters
    """
    tree = _parse(manifold_root, text, 'manifold expression')
    return _build_manifold(_named(tree, 'manifold_expr')[0], text)


# ---- vectors --------------------------------------------------------------

def parse_vector(text: str, lattice: Optional[IntersectionLattice] = None) -> Union[LatticeVector, tuple]:
    """Comma-separated integers, optionally bracketed; a LatticeVector when a lattice is given."""
    tree = _parse(vector_root, text, 'vector')
    coords = tuple(int(part.value) for part in _named(_named(tree, 'vector')[0], 'signed_integer'))
    if lattice is None:
        return coords
    if len(coords) != lattice.rank:
        raise ParseError(f"Vector '{text}' has {len(coords)} coordinates, the lattice has rank {lattice.rank}")
    return lattice.vector(coords)


# ---- diffeomorphisms ------------------------------------------------------

def load_automorphisms(data: Mapping[str, list], lattice: IntersectionLattice) -> Dict[str, LatticeAutomorphism]:
    """Named automorphisms {name: integer matrix} of a lattice."""
    named = {}
    for name, matrix in data.items():
        named[name] = LatticeAutomorphism.from_array(np.array(matrix, dtype=int), lattice)
    logger.info(f"Loaded {len(named)} named automorphisms")
    return named


class _DiffeoBuilder:
    def __init__(self, text: str, automorphisms: Mapping[str, object]):
        self.text = text
        self.automorphisms = automorphisms

    def fail(self, message: str, node):
        raise ParseError(message, _offset(self.text, node.position))

    def build(self, node, source: ManifoldExpr) -> DiffeoExpr:
        try:
            return getattr(self, f'_{node.rule_name}')(node, source)
        except ParseError:
            raise
        except SWCalcError as e:
            self.fail(str(e), node)

    def _diffeo_expr(self, node, source):
        operands = _named(node, 'connsum')
        result = self.build(operands[0], source)
        for operand in operands[1:]:
            result = DiffeoExpr.compose(result, self.build(operand, source))
        return result

    def _connsum(self, node, source):
        operands = _named(node, 'unary')
        singles = len(operands) - 1
        if singles == 0:
            return self.build(operands[0], source)
        if len(source) <= singles:
            self.fail(f"{len(operands)} operands of '#' need more summands than {source} has", node)
        head = len(source) - singles
        result = self.build(operands[0], ManifoldExpr(source.summands[:head]))
        for position, operand in enumerate(operands[1:], start=head):
            result = DiffeoExpr.conn_sum(result, self.build(operand, ManifoldExpr.of(source.summands[position])))
        return result

    def _unary(self, node, source):
        parts = list(_parts(node))
        return self.build(parts[0], source)

    def _identity(self, node, source):
        return DiffeoExpr.identity(source)

    def _rho(self, node, source):
        index = int(_named(node, 'integer')[0].value)
        return DiffeoExpr.rho(source, index)

    def _inverse(self, node, source):
        return DiffeoExpr.inverse(self.build(_named(node, 'diffeo_expr')[0], source))

    def _conj(self, node, source):
        name = _named(node, 'psi_name')[0].value
        inner = _named(node, 'manifold_expr')
        conjugand_source = _build_manifold(inner[0], self.text) if inner else source
        conjugand = self.build(_named(node, 'diffeo_expr')[0], conjugand_source)
        return DiffeoExpr.relabel(self.automorphism(name, source, node), conjugand, source, name=name)

    def automorphism(self, name: str, source: ManifoldExpr, node) -> LatticeAutomorphism:
        if name == 'I':
            return source.lattice.identity()
        if name not in self.automorphisms:
            self.fail(f"Unknown automorphism '{name}'", node)
        psi = self.automorphisms[name]
        if not isinstance(psi, LatticeAutomorphism):
            psi = LatticeAutomorphism.from_array(np.array(psi, dtype=int), source.lattice)
        return psi


def parse_diffeo(text: str, source: ManifoldExpr,
                 automorphisms: Optional[Mapping[str, object]] = None) -> DiffeoExpr:
    """
    Parse a diffeomorphism expression of `source`.

    Args:
        text: expression such as "(id # rho@1) * conj(P, id # rho@1, E1(2,5) # S2xS2)"
        source: the manifold the expression acts on
        automorphisms: named automorphisms (LatticeAutomorphism or integer matrices)
            available to conj(...); the name I is always the identity

    Raises:
        ParseError: on syntax errors or operands that do not fit their summands
    """
    tree = _parse(diffeo_root, text, 'diffeomorphism expression')
    builder = _DiffeoBuilder(text, automorphisms or {})
    result = builder.build(_named(tree, 'diffeo_expr')[0], source)
    if result.source != source:
        raise ParseError(f"'{text}' acts on {result.source}, expected {source}")
    return result
