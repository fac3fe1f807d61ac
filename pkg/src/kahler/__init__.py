from .semigroup import NumericalSemigroup, semigroup_contains, frobenius_number
from .sw import (
    KahlerModel,
    LineBundleClass,
    WallSide,
    fiber_multiple,
    riemann_roch_chi,
    h0_positive,
    wall_side,
    sw_chambered,
    sw_zero_chamber,
    zero_chamber_defined,
    zero_chamber_value,
    basic_classes_zero,
    kahler_record,
)

__all__ = [
    'NumericalSemigroup',
    'KahlerModel',
    'LineBundleClass',
    'WallSide',
    'semigroup_contains',
    'frobenius_number',
    'fiber_multiple',
    'riemann_roch_chi',
    'h0_positive',
    'wall_side',
    'sw_chambered',
    'sw_zero_chamber',
    'zero_chamber_defined',
    'zero_chamber_value',
    'basic_classes_zero',
    'kahler_record',
]
