from .diffeo import DiffeoExpr, DiffeoKind, preserves, is_torelli, sgn_plus_of
from .certified import CertifiedValue, Derivation, ValueKind
from .engine import (
    ChamberTag,
    FamilyQuery,
    FamiliesEngine,
    RULES,
    chamber_defined,
    chamber_coincidence_check,
    default_engine,
    replay,
    summand_zero_chamber,
    sw_family,
)

__all__ = [
    'DiffeoExpr',
    'DiffeoKind',
    'CertifiedValue',
    'Derivation',
    'ValueKind',
    'ChamberTag',
    'FamilyQuery',
    'FamiliesEngine',
    'RULES',
    'preserves',
    'is_torelli',
    'sgn_plus_of',
    'chamber_defined',
    'chamber_coincidence_check',
    'default_engine',
    'replay',
    'summand_zero_chamber',
    'sw_family',
]
