import dataclasses

import numpy as np
import pytest

from alphabet import Alphabet, AlphabetMode
from grid import IntGrid
from nength_errors import AlphabetError, DecodeError, PrecisionError, ShapeMismatchError, UnsupportedModeError
from nength_index import NengthIndex
from nength_transform import NengthTransform
from pattern_support import PatternSupport
from query import Query
from search_engine import SearchEngine
from shape import Shape
from grid_factories import as_offsets, letters, random_shape, random_support, random_text

PAIR = PatternSupport(Shape((4,)), ((0,), (1,)))


def as_sets(buckets):
    return {digits: set(offsets) for digits, offsets in buckets.items()}


def byte_alphabet():
    return Alphabet(tuple(f"c{code}" for code in range(1, 256)))


# ---------------------------------------------------------------------------- #
#                                   Examples                                   #
# ---------------------------------------------------------------------------- #


def test_find_all_one_dimensional_example(engine, ab, abba):
    table = engine.find_all(engine.build_index(abba, ab), PAIR)
    assert engine.lookup(table, Query(ab.parse_query("ab"))) == as_offsets(0)
    assert engine.lookup(table, Query(ab.parse_query("ba"))) == as_offsets(2)
    assert engine.lookup(table, Query(ab.parse_query("aa"))) == as_offsets(3)
    assert as_sets(table.groups[0]) == {(1, 2): {(0,)}, (2, 2): {(1,)}, (2, 1): {(2,)}, (1, 1): {(3,)}}
    assert table.digit_tuples() == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_find_all_two_dimensional_example(engine, ab):
    text = ab.encode_text([["a", "b"], ["b", "a"]])
    support = PatternSupport(text.shape, ((0, 0), (1, 0)))
    table = engine.find_all(engine.build_index(text, ab), support)
    assert engine.lookup(table, Query((1, 2))) == as_offsets((0, 0), (1, 1))
    assert engine.lookup(table, Query((2, 1))) == as_offsets((0, 1), (1, 0))


def test_symbol_missing_from_the_text_matches_nothing(engine):
    abc = letters(3)
    text = abc.encode_text(list("abba"))
    table = engine.find_all(engine.build_index(text, abc), PAIR)
    assert engine.lookup(table, Query(abc.parse_query("ac"))) == frozenset()


def test_match_nowrap_drops_wrapping_alignments(engine, ab, abba):
    wrapped = engine.find_all(engine.build_index(abba, ab), PAIR)
    linear = engine.match_nowrap(abba, PAIR, ab)
    assert engine.lookup(wrapped, Query((1, 1))) == as_offsets(3)
    assert engine.lookup(linear, Query((1, 1))) == frozenset()
    assert engine.lookup(linear, Query((2, 1))) == as_offsets(2)
    assert not linear.wrap


def test_single_cell_support_wraps_and_does_not_wrap_alike(engine, ab, abba):
    support = PatternSupport(Shape((4,)), ((0,),))
    wrapped = engine.find_all(engine.build_index(abba, ab), support)
    linear = engine.match_nowrap(abba, support, ab)
    assert engine.lookup(wrapped, Query((1,))) == as_offsets(0, 3)
    assert engine.lookup(linear, Query((1,))) == as_offsets(0, 3)


def test_match_nowrap_needs_shifted_mode(engine):
    paper = Alphabet(("a", "b"), AlphabetMode.PAPER)
    with pytest.raises(UnsupportedModeError):
        engine.match_nowrap(paper.encode_text(list("abba")), PAIR, paper)


def test_paper_mode_wrapping_search(engine):
    paper = Alphabet(("a", "b"), AlphabetMode.PAPER)
    text = paper.encode_text(list("abba"))
    table = engine.find_all(engine.build_index(text, paper), PAIR)
    assert engine.lookup(table, Query(paper.parse_query("ab"))) == as_offsets(0)
    assert engine.lookup(table, Query(paper.parse_query("aa"))) == as_offsets(3)


def test_build_index_of_an_empty_text_is_zero(engine, ab):
    index = engine.build_index(IntGrid.zeros(Shape((3, 2))), ab)
    np.testing.assert_allclose(index.text_nength.values, 0)


def test_single_cell_text(engine, ab):
    text = IntGrid([1])
    table = engine.find_all(engine.build_index(text, ab), PatternSupport(text.shape, ((0,),)))
    assert engine.lookup(table, Query((1,))) == as_offsets(0)
    assert engine.lookup(table, Query((2,))) == frozenset()


def test_build_index_is_deterministic(engine, ab):
    text = ab.encode_text([["a", "b", "a"], ["b", "b", "a"]])
    first, second = engine.build_index(text, ab), engine.build_index(text, ab)
    assert first.text_nength == second.text_nength
    assert first.source_digest == second.source_digest


def test_build_index_rejects_codes_outside_the_alphabet(engine, ab):
    with pytest.raises(AlphabetError, match=r"\(2,\)"):
        engine.build_index(IntGrid([1, 2, 3]), ab)


def test_support_and_text_shapes_must_agree(engine, ab, abba):
    index = engine.build_index(abba, ab)
    with pytest.raises(ShapeMismatchError):
        engine.find_all(index, PatternSupport(Shape((5,)), ((0,), (1,))))
    with pytest.raises(ShapeMismatchError):
        engine.match_nowrap(abba, PatternSupport(Shape((2, 2)), ((0, 0),)), ab)


def test_lookup_checks_query_length(engine, ab, abba):
    table = engine.find_all(engine.build_index(abba, ab), PAIR)
    with pytest.raises(AlphabetError):
        engine.lookup(table, Query((1, 2, 1)))


# ---------------------------------------------------------------------------- #
#                             Oracle equivalence                               #
# ---------------------------------------------------------------------------- #


def test_engine_agrees_with_the_oracle_on_random_instances(engine, oracle):
    rng = np.random.default_rng(500)
    for _ in range(500):
        shape = random_shape(rng, max_dim=6)
        sigma = int(rng.integers(1, 5))
        alphabet = letters(sigma)
        text = random_text(rng, shape, sigma)
        support = random_support(rng, shape, int(rng.integers(1, 5)))
        wrapped = engine.find_all(engine.build_index(text, alphabet), support)
        assert as_sets(wrapped.groups[0]) == oracle.sliding_table(text, support, wrap=True)
        linear = engine.match_nowrap(text, support, alphabet)
        assert as_sets(linear.groups[0]) == oracle.sliding_table(text, support, wrap=False)


def test_every_wrapping_alignment_lands_in_exactly_one_bucket(engine):
    rng = np.random.default_rng(8)
    shape = Shape((5, 4, 3))
    text = random_text(rng, shape, 3)
    table = engine.find_all(engine.build_index(text, letters(3)), random_support(rng, shape, 3))
    buckets = list(table.groups[0].values())
    assert sum(len(offsets) for offsets in buckets) == shape.s == table.offset_count()
    assert frozenset().union(*buckets) == frozenset(text.cells())


def test_split_supports_agree_with_the_oracle(oracle):
    engine = SearchEngine()
    rng = np.random.default_rng(256)
    alphabet = byte_alphabet()
    shape = Shape((512,))
    text = IntGrid(rng.integers(1, 256, size=shape.dims))
    support = random_support(rng, shape, 7)
    table = engine.find_all(engine.build_index(text, alphabet), support)
    assert table.group_sizes == (4, 3)
    expected = oracle.sliding_table(text, support, wrap=True)
    for trial in range(100):
        if trial % 2 == 0:
            digits = list(expected)[int(rng.integers(len(expected)))]
        else:
            digits = tuple(int(d) for d in rng.integers(1, 256, size=7))
        assert engine.lookup(table, Query(digits)) == expected.get(digits, set())


def test_unsplit_overflowing_support_fails_loudly():
    engine = SearchEngine(allow_splitting=False)
    alphabet = byte_alphabet()
    text = IntGrid(np.full(512, 255))
    support = PatternSupport(text.shape, tuple((j,) for j in range(7)))
    with pytest.raises(PrecisionError):
        engine.find_all(engine.build_index(text, alphabet), support)


def test_find_all_many_keeps_input_order(engine, ab):
    text = ab.encode_text([["a", "b", "b"], ["b", "a", "a"]])
    index = engine.build_index(text, ab)
    supports = [
        PatternSupport(text.shape, ((0, 0),)),
        PatternSupport(text.shape, ((0, 0), (0, 1))),
        PatternSupport(text.shape, ((0, 0), (1, 2), (1, 0))),
    ]
    assert SearchEngine(max_workers=3).find_all_many(index, supports) == [engine.find_all(index, support) for support in supports]


# ---------------------------------------------------------------------------- #
#                              Persisted indexes                               #
# ---------------------------------------------------------------------------- #


def test_recover_text_inverts_the_index(engine, ab):
    text = ab.encode_text([["a", "b", "a"], ["b", "b", "a"]])
    assert engine.recover_text(engine.build_index(text, ab)) == text


def test_recover_text_detects_a_tampered_digest(engine, ab, abba):
    index = engine.build_index(abba, ab)
    with pytest.raises(DecodeError):
        engine.recover_text(dataclasses.replace(index, source_digest=index.source_digest ^ 1))


def test_search_nowrap_from_a_persisted_index(engine, ab, abba):
    index = NengthIndex.from_bytes(engine.build_index(abba, ab).to_bytes())
    table = engine.search_nowrap(index, PAIR)
    assert engine.lookup(table, Query((1, 1))) == frozenset()
    assert engine.lookup(table, Query((1, 2))) == as_offsets(0)


def test_pattern_nengths_are_cached_per_engine(ab, abba):
    first, second = SearchEngine(), SearchEngine(transform=NengthTransform(workers=2))
    index = first.build_index(abba, ab)
    first.find_all(index, PAIR)
    first.find_all(index, PAIR)
    assert len(first.pattern_cache) == 1
    assert len(second.pattern_cache) == 0
    second.find_all(index, PAIR)
    assert len(second.pattern_cache) == 1
