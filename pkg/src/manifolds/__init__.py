from .atoms import Atom, AtomKind, E1LogModel, PSC_KINDS, chart_lattice, fiber_class
from .algebra import (
    ManifoldExpr,
    ManifoldInvariants,
    SpinCClass,
    lattice_of,
    invariants,
    expected_dimension,
    spinc_family,
    connected_sum_spinc,
)

__all__ = [
    'Atom',
    'AtomKind',
    'E1LogModel',
    'PSC_KINDS',
    'ManifoldExpr',
    'ManifoldInvariants',
    'SpinCClass',
    'chart_lattice',
    'fiber_class',
    'lattice_of',
    'invariants',
    'expected_dimension',
    'spinc_family',
    'connected_sum_spinc',
]
