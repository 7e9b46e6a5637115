from dataclasses import dataclass
from typing import List, Tuple


@dataclass(frozen=True)
class Query:
    digits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))

    @property
    def r(self) -> int:
        return len(self.digits)

    def split(self, group_sizes: List[int]) -> List[Tuple[int, ...]]:
        parts, start = [], 0
        for size in group_sizes:
            parts.append(self.digits[start : start + size])
            start += size
        return parts
