import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from grid import IntGrid
from nength_errors import AlphabetError, InputFormatError


class AlphabetMode(Enum):
    SHIFTED = "shifted"
    PAPER = "paper"

    @property
    def flag(self) -> int:
        return 0 if self is AlphabetMode.SHIFTED else 1

    @property
    def min_code(self) -> int:
        """Shifted mode keeps code 0 for an empty cell."""
        return 1 if self is AlphabetMode.SHIFTED else 0

    @classmethod
    def from_flag(cls, flag: int) -> "AlphabetMode":
        if flag not in (0, 1):
            raise InputFormatError(f"Unknown alphabet mode flag {flag}")
        return cls.SHIFTED if flag == 0 else cls.PAPER


@dataclass(frozen=True)
class Alphabet:
    """
    Maps user symbols to character codes.

    Shifted mode (default) uses codes 1..σ with base σ+1 and keeps code 0 for an empty cell.
    Paper mode uses codes 0..σ-1 with base σ, so 0 is a real character there.
    """

    symbols: Tuple[str, ...]
    mode: AlphabetMode = AlphabetMode.SHIFTED
    codes: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if len(symbols) == 0:
            raise AlphabetError("An alphabet needs at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"Alphabet symbols must be distinct. Got {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "codes", {sym: self.min_code + i for i, sym in enumerate(symbols)})

    @classmethod
    def read_alphabet(cls, path, mode: AlphabetMode = AlphabetMode.SHIFTED) -> "Alphabet":
        """One symbol per line. Blank lines are rejected since they cannot name a symbol."""
        path = Path(path)
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as err:
            raise InputFormatError(f"Could not read alphabet file {path}: {err}") from err
        if any(line == "" for line in lines):
            raise InputFormatError(f"Alphabet file {path} contains a blank line")
        logging.info(f"Read {len(lines)} symbols from {path} in {mode.value} mode")
        return cls(tuple(lines), mode)

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def base(self) -> int:
        return self.size + 1 if self.mode is AlphabetMode.SHIFTED else self.size

    @property
    def min_code(self) -> int:
        return self.mode.min_code

    @property
    def max_code(self) -> int:
        return self.min_code + self.size - 1

    def code_of(self, symbol: str) -> int:
        try:
            return self.codes[symbol]
        except KeyError:
            raise AlphabetError(f"Symbol {symbol!r} is not in the alphabet")

    def symbol_of(self, code: int) -> str:
        if not self.min_code <= code <= self.max_code:
            raise AlphabetError(f"Code {code} is outside the alphabet range {self.min_code}..{self.max_code}")
        return self.symbols[code - self.min_code]

    def parse_query(self, query: str) -> List[int]:
        """
        Query strings name one symbol per support cell. Character-wise when every symbol is a single
        character, otherwise symbols are whitespace separated.
        """
        if all(len(sym) == 1 for sym in self.symbols):
            tokens = list(query)
        else:
            tokens = query.split()
        return [self.code_of(token) for token in tokens]

    def format_query(self, digits) -> str:
        separator = "" if all(len(sym) == 1 for sym in self.symbols) else " "
        return separator.join(self.symbol_of(int(d)) for d in digits)

    def encode_text(self, rows) -> IntGrid:
        """Encodes a nested list of symbols (any depth) into a text grid."""
        symbols = np.array(rows, dtype=object)
        return IntGrid(np.vectorize(self.code_of, otypes=[np.int64])(symbols))

    def validate_codes(self, text: IntGrid):
        """Text cells may hold any character code, plus 0 for an empty cell in shifted mode."""
        bad = (text.values < 0) | (text.values > self.max_code)
        if np.any(bad):
            coordinate = tuple(int(v) for v in np.argwhere(bad)[0])
            value = int(text.values[coordinate])
            raise AlphabetError(
                f"Code {value} at coordinate {coordinate} is outside the alphabet range 0..{self.max_code}"
            )
