import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from nength_errors import DimensionError


@dataclass(frozen=True)
class Shape:
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise DimensionError("A shape needs at least one dimension")
        if any(d < 1 for d in dims):
            raise DimensionError(f"Every dimension must be positive. Got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def s(self) -> int:
        return math.prod(self.dims)

    def reduce(self, index: Sequence[int]) -> Tuple[int, ...]:
        """Reduce every coordinate into [0, s_w). Python's % already returns the nonnegative remainder."""
        self.check_arity(index)
        return tuple(int(v) % d for v, d in zip(index, self.dims))

    def linear(self, index: Sequence[int]) -> int:
        linear = 0
        for v, d in zip(self.reduce(index), self.dims):
            linear = linear * d + v
        return linear

    def unravel(self, linear: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.unravel_index(int(linear) % self.s, self.dims))

    def check_arity(self, index: Sequence[int]):
        if len(index) != self.n:
            raise DimensionError(f"Index {tuple(index)} has {len(index)} coordinates but the grid has {self.n} dimensions")

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)
