from .families import (
    TdFamily,
    BlowupLevel,
    LiftedFamily,
    base_manifold,
    build_td,
    blowup_lift,
    fiber_spinc,
)
from .certificates import (
    SupportMatrix,
    RankCertificate,
    evaluate_matrix,
    odd_indices,
    rank_certificate,
)
from .divisibility import OqClass, OqSum, candidate_support, sw_OQ

__all__ = [
    'TdFamily',
    'BlowupLevel',
    'LiftedFamily',
    'SupportMatrix',
    'RankCertificate',
    'OqClass',
    'OqSum',
    'base_manifold',
    'build_td',
    'blowup_lift',
    'fiber_spinc',
    'evaluate_matrix',
    'odd_indices',
    'rank_certificate',
    'candidate_support',
    'sw_OQ',
]
