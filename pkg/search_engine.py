import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from cachetools import LRUCache, cachedmethod

from alphabet import Alphabet, AlphabetMode
from grid import IntGrid
from match_table import Buckets, MatchTable
from nength_errors import DecodeError, UnsupportedModeError
from nength_grid import NengthGrid
from nength_index import NengthIndex, source_digest
from nength_transform import NengthTransform
from pattern_codec import PatternCodec
from pattern_support import PatternSupport
from query import Query
from shape import Shape


class SearchEngine:
    """
    Indexes a text grid once, then answers every query for a pattern support with one convolution.

    The index holds the nength of the reversed text. For a support, the pattern nength times the text
    nength, transformed back, is the match grid M; M[v] spells the characters under the support at
    offset o = (-v) mod shape of the user's text. Supports too wide for the precision budget are split
    into digit groups, one convolution each, and lookups intersect the groups' offset sets.
    """

    def __init__(
        self,
        codec: PatternCodec = None,
        transform: NengthTransform = None,
        allow_splitting: bool = True,
        max_workers: Optional[int] = None,
    ):
        self.codec = codec or PatternCodec()
        self.transform = transform or NengthTransform()
        self.allow_splitting = allow_splitting
        self.max_workers = max_workers
        # pattern nengths per (support group, base), owned by this engine and its transform
        self.pattern_cache = LRUCache(maxsize=128)
        self.pattern_cache_lock = threading.Lock()

    # ---------------------------------------------------------------------------- #
    #                                   Indexing                                   #
    # ---------------------------------------------------------------------------- #

    def build_index(self, text: IntGrid, alphabet: Alphabet) -> NengthIndex:
        alphabet.validate_codes(text)
        index = NengthIndex(
            shape=text.shape,
            base=alphabet.base,
            mode=alphabet.mode,
            text_nength=self.transform.nengthen(text.reverse()),
            source_digest=source_digest(text),
            alphabet=alphabet,
        )
        logging.info(f"Built index for {text.shape} text (s={text.shape.s}, base={alphabet.base}, {alphabet.mode.value})")
        return index

    def recover_text(self, index: NengthIndex) -> IntGrid:
        """Inverts the index back to the user's text and checks it against the stored digest."""
        text = IntGrid(self.transform.unnengthen_to_int(index.text_nength).reverse().values)
        if source_digest(text) != index.source_digest:
            raise DecodeError(f"Text recovered from the {index.shape} index does not match its source digest")
        return text

    # ---------------------------------------------------------------------------- #
    #                                   Searching                                  #
    # ---------------------------------------------------------------------------- #

    def find_all(self, index: NengthIndex, support: PatternSupport) -> MatchTable:
        support.check_shape(index.shape)
        return self.__find(index, support, support, valid=None, wrap=True)

    def find_all_many(self, index: NengthIndex, supports: List[PatternSupport]) -> List[MatchTable]:
        """Independent supports against one shared index, run on a thread pool. Output order follows input order."""
        with ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="FindAllThread") as executor:
            return list(executor.map(lambda support: self.find_all(index, support), supports))

    def lookup(self, table: MatchTable, query: Query):
        return table.lookup(query)

    def match_nowrap(self, text: IntGrid, support: PatternSupport, alphabet: Alphabet) -> MatchTable:
        """
        Linear (non-cyclic) matching. The text is zero-padded at the high end of every axis by the support's
        largest cell coordinate, searched cyclically, and only offsets whose whole support lies inside the
        original text are kept. Needs shifted mode so the padding code 0 can never equal a query digit.
        """
        if alphabet.mode is AlphabetMode.PAPER:
            raise UnsupportedModeError("Non-wrapping search needs the shifted alphabet. Code 0 is a real character in paper mode")
        support.check_shape(text.shape)
        padded = text.pad(support.max_cell())
        logging.info(f"Padded {text.shape} text to {padded.shape} for non-wrapping search")
        index = self.build_index(padded, alphabet)
        return self.__find(index, support.with_shape(padded.shape), support, self.__inside_mask(text.shape, padded.shape, support), wrap=False)

    def search_nowrap(self, index: NengthIndex, support: PatternSupport) -> MatchTable:
        """match_nowrap starting from a persisted index."""
        if index.mode is AlphabetMode.PAPER:
            raise UnsupportedModeError("Non-wrapping search needs the shifted alphabet. Code 0 is a real character in paper mode")
        alphabet = index.alphabet or Alphabet(tuple(str(code) for code in range(1, index.base)))
        return self.match_nowrap(self.recover_text(index), support, alphabet)

    # ---------------------------------------------------------------------------- #
    #                                 Digit groups                                 #
    # ---------------------------------------------------------------------------- #

    def plan_groups(self, support: PatternSupport, base: int) -> List[PatternSupport]:
        plan = self.codec.capacity_check(base, support.r, support.shape.s)
        if plan.is_ok or not self.allow_splitting:
            if not plan.is_ok:
                logging.warning(f"Splitting disabled. Running {support.r} cells in one group against a {plan.required_groups}-group budget")
            return [PatternSupport(support.shape, support.cells)]
        groups = support.split(plan.cells_per_group)
        logging.info(f"Split {support.r} support cells into {len(groups)} groups of at most {plan.cells_per_group}")
        return groups

    def __find(
        self,
        index: NengthIndex,
        support: PatternSupport,
        reported_support: PatternSupport,
        valid: Optional[np.ndarray],
        wrap: bool,
    ) -> MatchTable:
        groups = self.plan_groups(support, index.base)
        buckets = tuple(self.__bucket_group(index, group, valid) for group in groups)
        return MatchTable(reported_support, tuple(group.r for group in groups), buckets, wrap)

    def __bucket_group(self, index: NengthIndex, group: PatternSupport, valid: Optional[np.ndarray]) -> Buckets:
        match = self.transform.unnengthen_to_int(self.transform.hadamard(self.__pattern_nength(group, index.base), index.text_nength))
        # the value for offset o sits at M[-o]
        by_offset = match.reverse().flat
        digits = self.codec.decode_values(by_offset, group, index.base)
        linear = np.arange(index.shape.s)
        if valid is not None:
            keep = valid.reshape(-1)
            digits, linear = digits[keep], linear[keep]
        return self.__bucket(digits, linear, index.shape)

    def __bucket(self, digits: np.ndarray, linear: np.ndarray, shape: Shape) -> Buckets:
        if len(linear) == 0:
            return {}
        keys, inverse = np.unique(digits, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        order = np.argsort(inverse, kind="stable")
        bounds = np.searchsorted(inverse[order], np.arange(len(keys) + 1))
        offsets = np.stack(np.unravel_index(linear, shape.dims), axis=1)
        buckets = {}
        for i, key in enumerate(keys.tolist()):
            members = offsets[order[bounds[i] : bounds[i + 1]]].tolist()
            buckets[tuple(key)] = frozenset(tuple(member) for member in members)
        return buckets

    def __inside_mask(self, original: Shape, padded: Shape, support: PatternSupport) -> np.ndarray:
        """True at offsets o of the padded grid with o + c < s_w for every support cell c."""
        coords = np.indices(padded.dims)
        limits = [s - c for s, c in zip(original.dims, support.max_cell())]
        return np.all([coords[w] < limits[w] for w in range(padded.n)], axis=0)

    @cachedmethod(lambda self: self.pattern_cache, lock=lambda self: self.pattern_cache_lock)
    def __pattern_nength(self, group: PatternSupport, base: int) -> NengthGrid:
        pattern = self.codec.encode_pattern(group, base, check_capacity=False)
        return self.transform.nengthen(pattern)
