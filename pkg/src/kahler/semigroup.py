"""
Two-generator numerical semigroups <m, n>.

Membership decides effectivity of fiber multiples on E1(m,n):
h0(a t') > 0 exactly when a = x m + y n with x, y >= 0.
"""
from dataclasses import dataclass
from functools import cached_property
from math import gcd
import logging

import numpy as np

from ..errors import ManifoldError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NumericalSemigroup:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ManifoldError(f"<{self.m},{self.n}>: generators must be at least 2")
        if gcd(self.m, self.n) != 1:
            raise ManifoldError(f"<{self.m},{self.n}>: generators must be coprime")

    @cached_property
    def _table(self) -> np.ndarray:
        """Membership of 0..mn, filled by dynamic programming."""
        size = self.m * self.n + 1
        member = np.zeros(size, dtype=bool)
        member[0] = True
        for a in range(1, size):
            member[a] = (a >= self.m and member[a - self.m]) or (a >= self.n and member[a - self.n])
        return member

    def contains(self, a: int) -> bool:
        if a < 0:
            return False
        if a >= len(self._table):
            # every integer above the Frobenius number mn - m - n < mn belongs
            return True
        return bool(self._table[a])

    __contains__ = contains

    def frobenius_number(self) -> int:
        """Largest integer outside the semigroup, by brute force up to mn."""
        gaps = np.nonzero(~self._table)[0]
        return int(gaps[-1]) if len(gaps) else -1

    def __str__(self):
        return f"<{self.m},{self.n}>"


def semigroup_contains(semigroup: NumericalSemigroup, a: int) -> bool:
    return semigroup.contains(a)


def frobenius_number(semigroup: NumericalSemigroup) -> int:
    return semigroup.frobenius_number()
