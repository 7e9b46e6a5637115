from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

from nength_errors import AlphabetError
from pattern_support import PatternSupport
from query import Query

Offset = Tuple[int, ...]
Buckets = Dict[Tuple[int, ...], FrozenSet[Offset]]


@dataclass(frozen=True)
class MatchTable:
    """
    Every alignment of a pattern support over a text, bucketed by the characters found under the
    support. Offsets are in the user's text coordinates.

    When the support had to be split into digit groups, each group keeps its own buckets keyed by
    that group's digit sub-tuple, and a query's offsets are the intersection across groups.
    Only digit tuples that occur are stored, so a group never holds more than s buckets.
    """

    support: PatternSupport
    group_sizes: Tuple[int, ...]
    groups: Tuple[Buckets, ...]
    wrap: bool

    def lookup(self, query: Query) -> FrozenSet[Offset]:
        if query.r != self.support.r:
            raise AlphabetError(f"Query has {query.r} digits but the support has {self.support.r} cells")
        matches = None
        for buckets, digits in zip(self.groups, query.split(list(self.group_sizes))):
            offsets = buckets.get(digits, frozenset())
            matches = offsets if matches is None else matches & offsets
            if not matches:
                return frozenset()
        return matches

    def digit_tuples(self, group: int = 0):
        return sorted(self.groups[group])

    def offset_count(self, group: int = 0) -> int:
        return sum(len(offsets) for offsets in self.groups[group].values())
