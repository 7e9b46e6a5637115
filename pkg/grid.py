from typing import Sequence, Tuple

import numpy as np

from nength_errors import DimensionError
from shape import Shape


class ToroidalGrid:
    """
    Dense n-dimensional grid whose every axis wraps around: an index v_w resolves to v_w mod s_w.

    Values are held as a read-only numpy array in C (row-major) order, so the flat view is the
    canonical linearization with axis 0 slowest. Grids are immutable once built and may be shared
    between threads.
    """

    DTYPE = None

    def __init__(self, values):
        array = np.array(values, dtype=self.DTYPE, copy=True)
        if array.ndim < 1:
            raise DimensionError("A grid needs at least one dimension")
        array.setflags(write=False)
        self.values = array
        self.shape = Shape(array.shape)

    @classmethod
    def from_flat(cls, shape: Shape, flat: Sequence):
        flat = np.asarray(flat, dtype=cls.DTYPE)
        if flat.size != shape.s:
            raise DimensionError(f"Expected {shape.s} values for shape {shape} but got {flat.size}")
        return cls(flat.reshape(shape.dims))

    @classmethod
    def zeros(cls, shape: Shape):
        return cls(np.zeros(shape.dims, dtype=cls.DTYPE))

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def get(self, index: Sequence[int]):
        return self.values[self.shape.reduce(index)].item()

    def reverse(self):
        """out[t] = grid[-t] on every axis. An involution."""
        mirrored = np.ix_(*[(-np.arange(d)) % d for d in self.shape.dims])
        return type(self)(self.values[mirrored])

    def rotate(self, offset: Sequence[int]):
        """out[t] = grid[t - offset]"""
        self.shape.check_arity(offset)
        return type(self)(np.roll(self.values, tuple(int(o) for o in offset), axis=tuple(range(self.shape.n))))

    def pad(self, extra: Sequence[int]):
        """Zero-extends each axis at its high end by extra[w] cells."""
        self.shape.check_arity(extra)
        if any(e < 0 for e in extra):
            raise DimensionError(f"Padding must be nonnegative. Got {tuple(extra)}")
        return type(self)(np.pad(self.values, [(0, int(e)) for e in extra]))

    def crop(self, dims: Sequence[int]):
        self.shape.check_arity(dims)
        return type(self)(self.values[tuple(slice(0, int(d)) for d in dims)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ToroidalGrid):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.shape, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self.shape}, values={self.values.tolist()})"


class IntGrid(ToroidalGrid):
    DTYPE = np.int64

    def cells(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in idx) for idx in np.ndindex(*self.shape.dims))


class ComplexGrid(ToroidalGrid):
    DTYPE = np.complex128


class MatchGrid(IntGrid):
    """The search product M of a pattern and a text. Values are exact integers."""
