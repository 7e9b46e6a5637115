import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from nength_errors import InputFormatError, InvalidSupportError, ShapeMismatchError
from shape import Shape


@dataclass(frozen=True)
class PatternSupport:
    """
    The cells a pattern looks at, in order, each with a distinct exponent. Every other cell is a wildcard.

    Cells are stored reduced into [0, s_w). Exponents default to the canonical 0..r-1.
    """

    shape: Shape
    cells: Tuple[Tuple[int, ...], ...]
    exponents: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        cells = tuple(self.shape.reduce(cell) for cell in self.cells)
        if len(cells) == 0:
            raise InvalidSupportError("A pattern support needs at least one cell")
        if len(set(cells)) != len(cells):
            raise InvalidSupportError(f"Support cells must be distinct after reduction into {self.shape}. Got {cells}")
        exponents = tuple(range(len(cells))) if self.exponents is None else tuple(int(e) for e in self.exponents)
        if len(exponents) != len(cells):
            raise InvalidSupportError(f"Got {len(exponents)} exponents for {len(cells)} cells")
        if any(e < 0 for e in exponents) or len(set(exponents)) != len(exponents):
            raise InvalidSupportError(f"Exponents must be distinct and nonnegative. Got {exponents}")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "exponents", exponents)

    @classmethod
    def read_support(cls, path, shape: Shape) -> "PatternSupport":
        """
        .npt (UTF-8): line 1 "NPT1", line 2 n, then one cell per line as n integers, in exponent order.
        """
        path = Path(path)
        try:
            lines = [line for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
        except OSError as err:
            raise InputFormatError(f"Could not read pattern file {path}: {err}") from err
        if len(lines) < 2 or lines[0].strip() != "NPT1":
            raise InputFormatError(f"Pattern file {path} must start with NPT1 and n")
        try:
            n = int(lines[1])
            cells = [tuple(int(v) for v in line.split()) for line in lines[2:]]
        except ValueError as err:
            raise InputFormatError(f"Non-integer token in pattern file {path}: {err}") from err
        if n != shape.n:
            raise ShapeMismatchError(f"Pattern file {path} is {n}-dimensional but the text is {shape.n}-dimensional")
        if any(len(cell) != n for cell in cells):
            raise InputFormatError(f"Every cell in {path} must have exactly {n} coordinates")
        logging.info(f"Read {len(cells)} support cells from {path}")
        return cls(shape, tuple(cells))

    @property
    def r(self) -> int:
        return len(self.cells)

    def digit_count(self) -> int:
        return max(self.exponents) + 1

    def max_cell(self) -> Tuple[int, ...]:
        return tuple(max(cell[w] for cell in self.cells) for w in range(self.shape.n))

    def with_shape(self, shape: Shape) -> "PatternSupport":
        """Same cells on another grid of the same dimensionality (for padded searches)."""
        if shape.n != self.shape.n:
            raise ShapeMismatchError(f"Cannot move a {self.shape.n}-dimensional support onto shape {shape}")
        return PatternSupport(shape, self.cells, self.exponents)

    def split(self, cells_per_group: int) -> List["PatternSupport"]:
        """Chunks the cells in order. Exponents restart at 0 inside every group."""
        if cells_per_group < 1:
            raise InvalidSupportError(f"Groups need at least one cell. Got {cells_per_group}")
        return [
            PatternSupport(self.shape, self.cells[start : start + cells_per_group])
            for start in range(0, self.r, cells_per_group)
        ]

    def check_shape(self, shape: Shape):
        if self.shape != shape:
            raise ShapeMismatchError(f"Support shape {self.shape} does not match grid shape {shape}")

    def offsets_within(self, offset: Sequence[int], dims: Sequence[int]) -> bool:
        return all(o + c < d for cell in self.cells for o, c, d in zip(offset, cell, dims))
