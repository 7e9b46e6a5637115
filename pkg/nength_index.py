import hashlib
import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from alphabet import Alphabet, AlphabetMode
from grid import IntGrid
from nength_errors import InputFormatError
from nength_grid import NengthGrid
from shape import Shape


def source_digest(text: IntGrid) -> int:
    """u64 checksum over the shape and the encoded text values."""
    digest = hashlib.blake2b(digest_size=8)
    digest.update(struct.pack(f"<{text.shape.n}Q", *text.shape.dims))
    digest.update(text.flat.astype("<i8").tobytes())
    return int.from_bytes(digest.digest(), "little")


@dataclass(frozen=True)
class NengthIndex:
    """
    The nength T^N of the reversed encoded text, plus what is needed to search it.

    Persisted as .nng (little-endian): b"NNG1", u32 version, u32 n, n x u64 dims, u64 base,
    u8 mode flag (0 shifted / 1 paper), s x (f64 real, f64 imag), u64 source digest.
    The alphabet's symbols are not persisted; only base and mode are.
    """

    MAGIC = b"NNG1"
    VERSION = 1

    shape: Shape
    base: int
    mode: AlphabetMode
    text_nength: NengthGrid
    source_digest: int
    alphabet: Optional[Alphabet] = None

    def to_bytes(self) -> bytes:
        header = self.MAGIC + struct.pack("<II", self.VERSION, self.shape.n)
        header += struct.pack(f"<{self.shape.n}Q", *self.shape.dims)
        header += struct.pack("<QB", self.base, self.mode.flag)
        body = self.text_nength.flat.astype("<c16").tobytes()
        return header + body + struct.pack("<Q", self.source_digest)

    def write(self, path):
        path = Path(path)
        path.write_bytes(self.to_bytes())
        logging.info(f"Wrote {self.shape} index to {path}")

    @classmethod
    def read(cls, path) -> "NengthIndex":
        path = Path(path)
        try:
            content = path.read_bytes()
        except OSError as err:
            raise InputFormatError(f"Could not read index file {path}: {err}") from err
        return cls.from_bytes(content)

    @classmethod
    def from_bytes(cls, content: bytes) -> "NengthIndex":
        if len(content) < 12 or content[:4] != cls.MAGIC:
            raise InputFormatError(f"Index must start with {cls.MAGIC!r}")
        version, n = struct.unpack_from("<II", content, 4)
        if version != cls.VERSION:
            raise InputFormatError(f"Unsupported index version {version}")
        body_at = 12 + 8 * n + 9
        if n < 1 or len(content) < body_at:
            raise InputFormatError(f"Index header is truncated or declares n={n}")
        shape = Shape(struct.unpack_from(f"<{n}Q", content, 12))
        base, mode_flag = struct.unpack_from("<QB", content, 12 + 8 * n)
        expected = body_at + 16 * shape.s + 8
        if len(content) != expected:
            raise InputFormatError(f"Index for shape {shape} should be {expected} bytes, found {len(content)}")
        values = np.frombuffer(content, dtype="<c16", count=shape.s, offset=body_at)
        (digest,) = struct.unpack_from("<Q", content, expected - 8)
        return cls(
            shape=shape,
            base=int(base),
            mode=AlphabetMode.from_flag(mode_flag),
            text_nength=NengthGrid.from_flat(shape, values),
            source_digest=int(digest),
        )
