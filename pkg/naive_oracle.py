import logging
from functools import reduce
from typing import Dict, List, Set, Tuple

import numpy as np

from grid import IntGrid, MatchGrid
from nength_errors import AlphabetError, SearchProductOverflowError, ShapeMismatchError
from pattern_support import PatternSupport
from query import Query

INT64_MAX = 2**63 - 1


class NaiveOracle:
    """
    Direct O(s^2) evaluation of the search product and of sliding-window matching. Fast-path results
    are checked against these loops.
    """

    # ---------------------------------------------------------------------------- #
    #                                Search product                                #
    # ---------------------------------------------------------------------------- #

    def search_product(self, p: IntGrid, t: IntGrid) -> MatchGrid:
        """M[v] = sum over every cell w of p[w] * t[v - w], all indices modular."""
        if p.shape != t.shape:
            raise ShapeMismatchError(f"Search product needs equal shapes. Got {p.shape} and {t.shape}")
        self.__check_accumulation_bound(p, t)
        axes = tuple(range(p.shape.n))
        product = np.zeros(p.shape.dims, dtype=np.int64)
        for w in np.ndindex(*p.shape.dims):
            # roll(t, w)[v] == t[v - w]
            product += p.values[w] * np.roll(t.values, w, axis=axes)
        return MatchGrid(product)

    def chain_search_product(self, grids: List[IntGrid]) -> MatchGrid:
        """((g0 . g1) . g2) ... for m >= 1 grids."""
        if len(grids) == 0:
            raise ShapeMismatchError("A search product needs at least one grid")
        return MatchGrid(reduce(self.search_product, grids[1:], grids[0]).values)

    def __check_accumulation_bound(self, p: IntGrid, t: IntGrid):
        worst = int(np.abs(p.values).astype(object).sum()) * int(np.abs(t.values).max(initial=0))
        if worst > INT64_MAX:
            raise SearchProductOverflowError(
                f"Search product of {p.shape} grids could reach {worst}, beyond 64-bit accumulation"
            )

    # ---------------------------------------------------------------------------- #
    #                               Sliding matching                               #
    # ---------------------------------------------------------------------------- #

    def sliding_match(self, text: IntGrid, support: PatternSupport, query: Query, wrap: bool) -> Set[Tuple[int, ...]]:
        """Every offset o with text[o + c_j] == q_j for all j."""
        support.check_shape(text.shape)
        if query.r != support.r:
            raise AlphabetError(f"Query has {query.r} digits but the support has {support.r} cells")
        return {
            offset
            for offset in self.__alignments(text, support, wrap)
            if self.__digits_under(text, support, offset) == query.digits
        }

    def sliding_table(self, text: IntGrid, support: PatternSupport, wrap: bool) -> Dict[Tuple[int, ...], Set[Tuple[int, ...]]]:
        """The digits under the support at every admissible offset, grouped by digits."""
        support.check_shape(text.shape)
        table: Dict[Tuple[int, ...], Set[Tuple[int, ...]]] = {}
        for offset in self.__alignments(text, support, wrap):
            table.setdefault(self.__digits_under(text, support, offset), set()).add(offset)
        logging.debug(f"Sliding table over {text.shape} holds {len(table)} distinct digit tuples")
        return table

    def __alignments(self, text: IntGrid, support: PatternSupport, wrap: bool):
        dims = text.shape.dims
        for offset in np.ndindex(*dims):
            offset = tuple(int(o) for o in offset)
            if wrap or support.offsets_within(offset, dims):
                yield offset

    def __digits_under(self, text: IntGrid, support: PatternSupport, offset: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(text.get(tuple(o + c for o, c in zip(offset, cell))) for cell in support.cells)
