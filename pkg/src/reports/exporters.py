"""
JSON, CSV and text output of calculator results.
"""
from collections import Counter
from pathlib import Path
from typing import Iterable, Optional, Tuple, Union
import json
import logging
import sys

import pandas as pd

from ..config import SCHEMA_VERSION, SIGN_CONVENTION
from ..kahler import LineBundleClass
from ..torelli import RankCertificate, SupportMatrix

logger = logging.getLogger(__name__)


def with_header(payload: dict, signed: bool = False) -> dict:
    data = {'schema': SCHEMA_VERSION}
    if signed:
        data['sign_convention'] = SIGN_CONVENTION
    data.update(payload)
    return data


def to_json(payload: dict, signed: bool = False) -> str:
    """Deterministic JSON: schema header, sorted keys, 2-space indent, trailing newline."""
    return json.dumps(with_header(payload, signed), sort_keys=True, indent=2) + "\n"


def matrix_frame(matrix: SupportMatrix) -> pd.DataFrame:
    rows = []
    for (row, col), value in sorted(matrix.entries.items()):
        rows.append({
            'row': row,
            'col': col,
            'kind': value.kind.value,
            'value': value.value if value.is_certified else 'unknown',
        })
    return pd.DataFrame(rows, columns=['row', 'col', 'kind', 'value'])


def basic_classes_frame(table: Iterable[Tuple[LineBundleClass, int]]) -> pd.DataFrame:
    rows = [{'a': bundle.fiber_multiple, 'L': str(bundle), 'sw0': value} for bundle, value in table]
    return pd.DataFrame(rows, columns=['a', 'L', 'sw0'])


def write(payload: dict, frame: Optional[pd.DataFrame] = None, out: Optional[Union[str, Path]] = None,
          fmt: str = 'json', signed: bool = False):
    """
    Write payload as JSON, or frame as CSV, to `out` or standard output.

    Results without a tabular form fall back to JSON when CSV is requested.
    """
    if fmt == 'csv' and frame is not None:
        text = frame.to_csv(index=False, lineterminator='\n')
    else:
        if fmt == 'csv':
            logger.warning("No table for this result; writing JSON")
        text = to_json(payload, signed)

    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        logger.info(f"Saved output to '{out}'")


def generate_certificate_report(certificate: RankCertificate, path: Union[str, Path]) -> Path:
    """Human-readable summary of a rank certificate."""
    matrix = certificate.witness
    diagonal = [matrix.entry(d, d) for d in matrix.indices]
    diagonal_kinds = Counter(value.kind.value for value in diagonal if value is not None)
    rules = Counter(
        rule
        for value in matrix.values() if value.derivation is not None
        for rule in value.trace
    )
    unknown = sum(1 for value in matrix.values() if not value.is_certified)

    path = Path(path)
    with open(path, 'w') as f:
        f.write("=" * 70 + "\n")
        f.write("TORELLI SUPPORT MATRIX CERTIFICATE\n")
        f.write("=" * 70 + "\n\n")

        f.write(f"Odd indices: 1 .. {2 * certificate.D - 1} (D = {certificate.D})\n")
        f.write(f"Rank lower bound: {certificate.rank_lower_bound}\n")
        f.write(f"Lower triangular, unit diagonal over F2: {certificate.triangular}\n")
        f.write(f"F2 rank of certified entries: {certificate.f2_rank}\n")
        f.write(f"Unknown entries: {unknown} of {len(matrix.entries)}\n\n")

        f.write("Diagonal value kinds:\n")
        for kind, count in sorted(diagonal_kinds.items()):
            f.write(f"  {kind}: {count}\n")

        f.write("\nRule applications over all derivations:\n")
        for rule, count in sorted(rules.items()):
            f.write(f"  {rule}: {count:,}\n")

        f.write("\n" + "=" * 70 + "\n")

    logger.info(f"Certificate report saved as '{path}'")
    return path
