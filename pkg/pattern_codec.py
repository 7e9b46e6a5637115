import logging
import math
from dataclasses import dataclass

import numpy as np

from alphabet import AlphabetMode
from grid import IntGrid
from nength_errors import AlphabetError, CapacityError, DecodeError
from pattern_support import PatternSupport
from query import Query

# absorbs log2 rounding so budgets that fit exactly are not rejected
BUDGET_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CapacityPlan:
    required_groups: int
    cells_per_group: int

    @property
    def is_ok(self) -> bool:
        return self.required_groups == 1


class PatternCodec:
    """
    Encodes a pattern support as distinct powers of the alphabet base and converts between query
    digits and the integer values found in a match grid.

    Match values must survive a double-precision round trip through the transforms. A support fits
    when digits * log2(base) + log2(s) + margin_bits <= mantissa_bits; otherwise it has to be split
    into digit groups that each fit.
    """

    def __init__(self, mantissa_bits: int = 52, margin_bits: int = 10):
        self.mantissa_bits = mantissa_bits
        self.margin_bits = margin_bits

    # ---------------------------------------------------------------------------- #
    #                                   Capacity                                   #
    # ---------------------------------------------------------------------------- #

    def capacity_check(self, base: int, r: int, s: int) -> CapacityPlan:
        if base < 1 or r < 1 or s < 1:
            raise CapacityError(f"Capacity check needs positive arguments. Got base={base}, r={r}, s={s}")
        digit_bits = math.log2(base)
        budget = self.mantissa_bits - self.margin_bits - math.log2(s)
        if digit_bits > budget:
            raise CapacityError(
                f"A single base-{base} digit needs {digit_bits:.1f} bits but only {budget:.1f} are available for s={s}"
            )
        if r * digit_bits <= budget + BUDGET_TOLERANCE:
            return CapacityPlan(1, r)
        cells_per_group = math.floor(budget / digit_bits + BUDGET_TOLERANCE)
        plan = CapacityPlan(math.ceil(r / cells_per_group), cells_per_group)
        logging.debug(f"Support of {r} cells at base {base}, s={s} needs {plan.required_groups} groups")
        return plan

    # ---------------------------------------------------------------------------- #
    #                                   Encoding                                   #
    # ---------------------------------------------------------------------------- #

    def encode_pattern(self, support: PatternSupport, base: int, check_capacity: bool = True) -> IntGrid:
        if base < 2:
            raise AlphabetError(f"Pattern entries must be distinct powers of the base, which needs base >= 2. Got {base}")
        if check_capacity:
            plan = self.capacity_check(base, support.digit_count(), support.shape.s)
            if not plan.is_ok:
                raise CapacityError(
                    f"{support.r} cells exceed the precision budget at base {base} for s={support.shape.s}. "
                    f"At most {plan.cells_per_group} cells fit in one group"
                )
        pattern = np.zeros(support.shape.dims, dtype=np.int64)
        for cell, exponent in zip(support.cells, support.exponents):
            pattern[cell] = base**exponent
        return IntGrid(pattern)

    def query_value(self, query: Query, support: PatternSupport, base: int, mode: AlphabetMode = AlphabetMode.SHIFTED) -> int:
        """Digits must be character codes of the mode: 1..base-1 when shifted, 0..base-1 in paper mode."""
        min_code = mode.min_code
        if query.r != support.r:
            raise AlphabetError(f"Query has {query.r} digits but the support has {support.r} cells")
        for digit in query.digits:
            if not min_code <= digit < base:
                raise AlphabetError(f"Query digit {digit} is outside the code range {min_code}..{base - 1}")
        return sum(digit * base**exponent for digit, exponent in zip(query.digits, support.exponents))

    # ---------------------------------------------------------------------------- #
    #                                   Decoding                                   #
    # ---------------------------------------------------------------------------- #

    def decode_value(self, value: int, support: PatternSupport, base: int) -> Query:
        limit = base ** support.digit_count()
        if not 0 <= value < limit:
            raise DecodeError(f"Match value {value} is outside [0, {limit}). The transform lost precision")
        return Query(tuple((value // base**exponent) % base for exponent in support.exponents))

    def decode_values(self, values: np.ndarray, support: PatternSupport, base: int) -> np.ndarray:
        """Vectorized decode_value over a whole match grid. Returns an array of shape values.shape + (r,)."""
        values = np.asarray(values, dtype=np.int64)
        limit = base ** support.digit_count()
        low, high = (int(values.min()), int(values.max())) if values.size else (0, 0)
        if low < 0 or high >= limit:
            raise DecodeError(
                f"Match values span [{low}, {high}] but must lie in [0, {limit}). "
                "The transform lost precision"
            )
        powers = np.array([base**exponent for exponent in support.exponents], dtype=np.int64)
        return (values[..., np.newaxis] // powers) % base
