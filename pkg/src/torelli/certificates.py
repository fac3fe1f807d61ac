"""
Support matrices of the t_d family and the rank certificate built on them.

Rows are the diffeomorphisms t_{d'}, columns the classes s_d, both indexed by
the odd numbers 1, 3, ..., 2D - 1. Entry (d', d) is SW^0_{X, s_d}(t_{d'}).
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from .families import TdFamily, build_td
from ..config import DEFAULT_JOBS, RULE_PRIORITY
from ..errors import CertificateError, PreconditionError
from ..families import CertifiedValue, ChamberTag, FamiliesEngine, FamilyQuery, default_engine
from ..lattice.diagonalize import f2_rank

logger = logging.getLogger(__name__)


def odd_indices(D: int) -> Tuple[int, ...]:
    return tuple(range(1, 2 * D, 2))


@dataclass
class SupportMatrix:
    D: int
    entries: Dict[Tuple[int, int], CertifiedValue] = field(default_factory=dict)

    @property
    def indices(self) -> Tuple[int, ...]:
        return odd_indices(self.D)

    def entry(self, row: int, col: int) -> Optional[CertifiedValue]:
        return self.entries.get((row, col))

    def values(self) -> List[CertifiedValue]:
        return list(self.entries.values())

    def bits(self) -> np.ndarray:
        """0/1 matrix of certified entries; missing or Unknown entries read as 0."""
        index = {d: i for i, d in enumerate(self.indices)}
        bits = np.zeros((self.D, self.D), dtype=np.uint8)
        for (row, col), value in self.entries.items():
            if value.is_certified:
                bits[index[row], index[col]] = value.value % 2
        return bits

    def to_dict(self) -> dict:
        return {
            'D': self.D,
            'indices': list(self.indices),
            'entries': [
                [row, col, value.value if value.is_certified else 'unknown']
                for (row, col), value in sorted(self.entries.items())
            ],
        }


def _evaluate_row(row: TdFamily, columns: List[TdFamily], engine: FamiliesEngine) -> List[CertifiedValue]:
    return [engine.evaluate(FamilyQuery(row.X, col.sd, row.td, ChamberTag.ZERO)) for col in columns]


def evaluate_matrix(D: int, engine: Optional[FamiliesEngine] = None, n_jobs: int = DEFAULT_JOBS,
                    progress: bool = False) -> SupportMatrix:
    """
    Evaluate every entry SW^0_{X, s_d}(t_{d'}) for odd d, d' <= 2D - 1.

    Args:
        D: number of odd indices
        engine: families engine (default: the shared engine)
        n_jobs: joblib workers; each worker evaluates whole rows
        progress: show a tqdm progress bar
    """
    if D < 1:
        raise PreconditionError(f"D must be at least 1, got {D}")
    logger.info(f"========| Evaluating the {D} x {D} support matrix |========")

    families = [build_td(d) for d in odd_indices(D)]
    rows = tqdm(families, desc="t_d rows", disable=not progress)

    if n_jobs == 1:
        engine = default_engine() if engine is None else engine
        results = [_evaluate_row(row, families, engine) for row in rows]
    else:
        order = engine.rule_order if engine is not None else RULE_PRIORITY
        mod2 = engine.mod2 if engine is not None else False
        results = Parallel(n_jobs=n_jobs)(
            delayed(_evaluate_row)(row, families, FamiliesEngine(order, mod2)) for row in rows
        )

    matrix = SupportMatrix(D)
    for row, values in zip(families, results):
        for col, value in zip(families, values):
            matrix.entries[(row.d, col.d)] = value

    unknown = sum(1 for value in matrix.values() if not value.is_certified)
    if unknown:
        logger.warning(f"{unknown} of {D * D} entries are Unknown")
    return matrix


@dataclass
class RankCertificate:
    D: int
    rank_lower_bound: int
    triangular: bool
    f2_rank: int
    witness: SupportMatrix

    def to_dict(self) -> dict:
        data = self.witness.to_dict()
        data.update({
            'rank': self.rank_lower_bound,
            'triangular': self.triangular,
            'f2_rank': self.f2_rank,
        })
        return data


def rank_certificate(D: int, matrix: Optional[SupportMatrix] = None,
                     engine: Optional[FamiliesEngine] = None, n_jobs: int = DEFAULT_JOBS,
                     progress: bool = False) -> RankCertificate:
    """
    Check that the support matrix is lower triangular with unit diagonal over F2.

    A certified 1 (mod 2) is required on every diagonal entry and a certified
    0 (mod 2) on every entry (d', d) with d > d'.

    Raises:
        CertificateError: if a diagonal entry is missing, Unknown or even
    """
    if matrix is None:
        matrix = evaluate_matrix(D, engine=engine, n_jobs=n_jobs, progress=progress)
    elif matrix.D != D:
        raise PreconditionError(f"Matrix has D = {matrix.D}, expected {D}")

    for d in matrix.indices:
        value = matrix.entry(d, d)
        if value is None:
            raise CertificateError(f"Diagonal entry ({d}, {d}) is missing")
        if not value.is_certified:
            raise CertificateError(f"Diagonal entry ({d}, {d}) is Unknown")
        if value.value % 2 != 1:
            raise CertificateError(f"Diagonal entry ({d}, {d}) is {value}, expected 1 (mod 2)")

    triangular = True
    for row in matrix.indices:
        for col in matrix.indices:
            if col <= row:
                continue
            value = matrix.entry(row, col)
            if value is None or not value.is_certified or value.value % 2:
                triangular = False
                logger.warning(f"Entry ({row}, {col}) breaks the triangular pattern: {value}")

    rank = f2_rank(matrix.bits())
    if triangular and rank != D:
        raise CertificateError(f"Triangular unit-diagonal matrix has F2 rank {rank} != {D}")

    if triangular:
        bound = D
    elif all(value.is_certified for value in matrix.values()) and len(matrix.entries) == D * D:
        bound = rank
    else:
        bound = 0

    certificate = RankCertificate(
        D=D,
        rank_lower_bound=bound,
        triangular=triangular,
        f2_rank=rank,
        witness=matrix,
    )
    logger.info(f"========| Rank certificate: rank >= {certificate.rank_lower_bound}, "
                f"triangular = {triangular} |========")
    return certificate
