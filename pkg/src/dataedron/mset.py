"""Multisets (bags) with non-negative real multiplicities.

A multiset maps opaque string element ids to multiplicities. Integer
multiplicities cover plain counting (authors, categories); real ones carry
scores (per-term weights). Zero entries are dropped at construction, so the
stored key set always equals the support and extensional equality coincides
with structural equality of the entries map.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

__all__ = ["Multiset", "EMPTY", "additive_union"]


class Multiset:
    """Immutable multiset over string element ids.

    Multiplicities must be finite and non-negative; entries equal to zero
    are removed so that ``support`` is exactly the key set. Instances are
    hashable and safe to share across threads.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, float] | None = None):
        cleaned: dict[str, float] = {}
        if entries:
            for element, mult in entries.items():
                if isinstance(mult, bool) or not isinstance(mult, (int, float)):
                    raise TypeError(f"multiplicity of {element!r} is not a real number")
                if not math.isfinite(mult):
                    raise ValueError(f"multiplicity of {element!r} is not finite")
                if mult < 0:
                    raise ValueError(f"multiplicity of {element!r} is negative")
                if mult > 0:
                    cleaned[element] = mult
        self._entries = cleaned

    @classmethod
    def counting(cls, elements: Iterable[str]) -> Multiset:
        """Natural multiset counting occurrences in ``elements``."""
        counts: dict[str, int] = {}
        for element in elements:
            counts[element] = counts.get(element, 0) + 1
        return cls(counts)

    @property
    def entries(self) -> Mapping[str, float]:
        """Read-only view of the positive entries."""
        return MappingProxyType(self._entries)

    @property
    def support(self) -> frozenset[str]:
        """Elements with non-zero multiplicity."""
        return frozenset(self._entries)

    def multiplicity(self, element: str) -> float:
        """m(x); 0 for elements outside the support."""
        return self._entries.get(element, 0)

    def is_natural(self) -> bool:
        """True iff every multiplicity is an exact non-negative integer."""
        return all(float(m).is_integer() for m in self._entries.values())

    def additive_union(self, other: Multiset) -> Multiset:
        """Pointwise sum of multiplicities with ``other``."""
        summed: dict[str, float] = dict(self._entries)
        for element, mult in other._entries.items():
            summed[element] = summed.get(element, 0) + mult
        return Multiset(summed)

    def items(self) -> Iterator[tuple[str, float]]:
        return iter(self._entries.items())

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __contains__(self, element: str) -> bool:
        return element in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}:{v}" for k, v in sorted(self._entries.items()))
        return f"Multiset({{{inner}}})"

    def to_json(self) -> dict:
        return {"entries": {k: self._entries[k] for k in sorted(self._entries)}}

    @classmethod
    def from_json(cls, obj: Mapping) -> Multiset:
        return cls(obj["entries"])


EMPTY = Multiset()


def additive_union(*multisets: Multiset) -> Multiset:
    """Fold of the pointwise sum; the empty fold is the empty multiset."""
    total: dict[str, float] = {}
    for ms in multisets:
        for element, mult in ms.items():
            total[element] = total.get(element, 0) + mult
    return Multiset(total)
