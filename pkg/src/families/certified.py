"""
Three-valued results of families queries and their derivation trees.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterator, List, Optional, Tuple


class ValueKind(str, Enum):
    INT = 'int'
    MOD2 = 'mod2'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Derivation:
    """One rewrite step: the rule, the query it answered and its value."""
    rule: str
    kind: ValueKind
    value: Optional[int]
    query: Any = None
    facts: Tuple[str, ...] = ()
    children: Tuple['Derivation', ...] = ()
    mod2_mode: bool = False

    def nodes(self) -> Iterator['Derivation']:
        yield self
        for child in self.children:
            yield from child.nodes()

    def trace(self) -> List[str]:
        return [node.rule for node in self.nodes()]

    def to_dict(self) -> dict:
        data = {
            'rule': self.rule,
            'kind': self.kind.value,
            'value': self.value,
            'query': self.query.describe() if self.query is not None else None,
        }
        if self.facts:
            data['facts'] = list(self.facts)
        if self.children:
            data['children'] = [child.to_dict() for child in self.children]
        return data


@dataclass(frozen=True)
class CertifiedValue:
    """
    CertifiedInt(k), CertifiedMod2(b) or Unknown.

    Equality ignores the derivation. Unknown absorbs arithmetic; mixing an
    integer with a mod-2 value reduces to mod 2.
    """
    kind: ValueKind
    value: Optional[int] = None
    derivation: Optional[Derivation] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind is ValueKind.UNKNOWN:
            object.__setattr__(self, 'value', None)
        elif self.value is None:
            raise ValueError(f"A {self.kind.value} value needs an integer")
        elif self.kind is ValueKind.MOD2:
            object.__setattr__(self, 'value', int(self.value) % 2)
        else:
            object.__setattr__(self, 'value', int(self.value))

    @classmethod
    def integer(cls, k: int) -> 'CertifiedValue':
        return cls(ValueKind.INT, k)

    @classmethod
    def mod2(cls, b: int) -> 'CertifiedValue':
        return cls(ValueKind.MOD2, b)

    @classmethod
    def unknown(cls) -> 'CertifiedValue':
        return cls(ValueKind.UNKNOWN)

    @property
    def is_certified(self) -> bool:
        return self.kind is not ValueKind.UNKNOWN

    def reduced(self) -> 'CertifiedValue':
        if self.kind is ValueKind.INT:
            return replace(self, kind=ValueKind.MOD2, value=self.value % 2)
        return self

    def with_derivation(self, derivation: Derivation) -> 'CertifiedValue':
        return replace(self, derivation=derivation)

    def __add__(self, other: 'CertifiedValue') -> 'CertifiedValue':
        if not self.is_certified or not other.is_certified:
            return CertifiedValue.unknown()
        if self.kind is ValueKind.INT and other.kind is ValueKind.INT:
            return CertifiedValue.integer(self.value + other.value)
        return CertifiedValue.mod2(self.value + other.value)

    def __neg__(self) -> 'CertifiedValue':
        if self.kind is ValueKind.INT:
            return CertifiedValue.integer(-self.value)
        return CertifiedValue(self.kind, self.value)

    def scaled(self, sign: int) -> 'CertifiedValue':
        return -self if sign < 0 else CertifiedValue(self.kind, self.value)

    def agrees_with(self, other: 'CertifiedValue') -> bool:
        """Equal as integers when both are integers, else equal mod 2; Unknown agrees with anything."""
        if not self.is_certified or not other.is_certified:
            return True
        if self.kind is ValueKind.INT and other.kind is ValueKind.INT:
            return self.value == other.value
        return self.value % 2 == other.value % 2

    @property
    def trace(self) -> List[str]:
        return self.derivation.trace() if self.derivation is not None else []

    def to_dict(self, include_derivation: bool = False) -> dict:
        data = {'kind': self.kind.value, 'value': self.value, 'trace': self.trace}
        if include_derivation and self.derivation is not None:
            data['derivation'] = self.derivation.to_dict()
        return data

    def __str__(self):
        if self.kind is ValueKind.UNKNOWN:
            return "unknown"
        if self.kind is ValueKind.MOD2:
            return f"{self.value} (mod 2)"
        return str(self.value)
