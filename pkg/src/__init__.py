"""
Seiberg-Witten families calculator - Source Package
"""
from .families import CertifiedValue, DiffeoExpr, FamiliesEngine, sw_family
from .kahler import KahlerModel
from .lattice import IntersectionLattice, LatticeAutomorphism, LatticeVector
from .manifolds import Atom, ManifoldExpr, SpinCClass
from .torelli import build_td, rank_certificate, sw_OQ

__version__ = '1.0.0'
__all__ = [
    'IntersectionLattice',
    'LatticeVector',
    'LatticeAutomorphism',
    'Atom',
    'ManifoldExpr',
    'SpinCClass',
    'KahlerModel',
    'DiffeoExpr',
    'CertifiedValue',
    'FamiliesEngine',
    'sw_family',
    'build_td',
    'rank_certificate',
    'sw_OQ',
]
