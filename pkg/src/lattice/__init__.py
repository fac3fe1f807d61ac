from .core import (
    IntersectionLattice,
    LatticeVector,
    LatticeAutomorphism,
    pair,
    is_characteristic,
    divisibility,
    direct_sum,
    reflect,
    reflection,
    random_automorphism,
)
from .positive import PositiveSubspaceBasis, positive_basis, sgn_plus
from .enumeration import enumerate_characteristics

__all__ = [
    'IntersectionLattice',
    'LatticeVector',
    'LatticeAutomorphism',
    'PositiveSubspaceBasis',
    'pair',
    'is_characteristic',
    'divisibility',
    'direct_sum',
    'reflect',
    'reflection',
    'random_automorphism',
    'positive_basis',
    'sgn_plus',
    'enumerate_characteristics',
]
