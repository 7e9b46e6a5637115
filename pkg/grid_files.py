import logging
import struct
from pathlib import Path

import numpy as np

from grid import IntGrid
from nength_errors import DimensionError, InputFormatError
from shape import Shape


class GridFiles:
    """
    Reads and writes integer grids.

    Text format (.ngt, UTF-8):
        NGT1
        <n>
        <s_0> ... <s_n-1>
        <s whitespace separated integers, row-major>

    Binary format (.ngb, little-endian):
        b"NGB1", u32 n, n x u64 dims, s x i64 values
    """

    TEXT_MAGIC = "NGT1"
    BINARY_MAGIC = b"NGB1"
    TEXT_SUFFIX = ".ngt"
    BINARY_SUFFIX = ".ngb"

    def read_grid(self, path) -> IntGrid:
        path = Path(path)
        logging.info(f"Reading grid from {path}")
        try:
            if path.suffix == self.BINARY_SUFFIX:
                return self.__read_binary(path.read_bytes())
            return self.__read_text(path.read_text(encoding="utf-8"))
        except OSError as err:
            raise InputFormatError(f"Could not read grid file {path}: {err}") from err
        except (DimensionError, OverflowError) as err:
            raise InputFormatError(f"Malformed grid file {path}: {err}") from err

    def write_grid(self, grid: IntGrid, path):
        path = Path(path)
        if path.suffix == self.BINARY_SUFFIX:
            path.write_bytes(self.to_binary(grid))
        else:
            path.write_text(self.to_text(grid), encoding="utf-8")
        logging.info(f"Wrote {grid.shape} grid to {path}")

    def to_text(self, grid: IntGrid) -> str:
        lines = [self.TEXT_MAGIC, str(grid.shape.n), " ".join(str(d) for d in grid.shape.dims)]
        # one text row per innermost-axis run keeps 2-D grids readable
        width = grid.shape.dims[-1]
        flat = grid.flat.tolist()
        for start in range(0, len(flat), width):
            lines.append(" ".join(str(v) for v in flat[start : start + width]))
        return "\n".join(lines) + "\n"

    def to_binary(self, grid: IntGrid) -> bytes:
        header = self.BINARY_MAGIC + struct.pack("<I", grid.shape.n) + struct.pack(f"<{grid.shape.n}Q", *grid.shape.dims)
        return header + grid.flat.astype("<i8").tobytes()

    # ---------------------------------------------------------------------------- #
    #                                    Parsing                                   #
    # ---------------------------------------------------------------------------- #

    def __read_text(self, content: str) -> IntGrid:
        lines = content.splitlines()
        if len(lines) < 3 or lines[0].strip() != self.TEXT_MAGIC:
            raise InputFormatError(f"Grid text must start with {self.TEXT_MAGIC}, n and the dimension sizes")
        try:
            n = int(lines[1])
            dims = [int(d) for d in lines[2].split()]
            values = [int(v) for v in " ".join(lines[3:]).split()]
        except ValueError as err:
            raise InputFormatError(f"Non-integer token in grid text: {err}") from err
        if len(dims) != n:
            raise InputFormatError(f"Header declares n={n} but lists {len(dims)} dimension sizes")
        shape = Shape(tuple(dims))
        if len(values) != shape.s:
            raise InputFormatError(f"Expected exactly {shape.s} values for shape {shape}, found {len(values)}")
        return IntGrid.from_flat(shape, values)

    def __read_binary(self, content: bytes) -> IntGrid:
        if len(content) < 8 or content[:4] != self.BINARY_MAGIC:
            raise InputFormatError(f"Binary grid must start with {self.BINARY_MAGIC!r}")
        (n,) = struct.unpack_from("<I", content, 4)
        values_at = 8 + 8 * n
        if n < 1 or len(content) < values_at:
            raise InputFormatError(f"Binary grid header is truncated or declares n={n}")
        shape = Shape(struct.unpack_from(f"<{n}Q", content, 8))
        expected = values_at + 8 * shape.s
        if len(content) != expected:
            raise InputFormatError(f"Binary grid for shape {shape} should be {expected} bytes, found {len(content)}")
        return IntGrid.from_flat(shape, np.frombuffer(content, dtype="<i8", offset=values_at))
