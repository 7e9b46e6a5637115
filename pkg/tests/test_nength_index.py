import struct

import numpy as np
import pytest

from alphabet import Alphabet, AlphabetMode
from nength_errors import InputFormatError
from nength_index import NengthIndex, source_digest


@pytest.fixture
def index(engine, ab):
    return engine.build_index(ab.encode_text([["a", "b", "a"], ["b", "b", "a"]]), ab)


def test_index_survives_write_and_read(tmp_path, index):
    path = tmp_path / "text.nng"
    index.write(path)
    loaded = NengthIndex.read(path)
    assert loaded.shape == index.shape
    assert loaded.base == index.base
    assert loaded.mode is AlphabetMode.SHIFTED
    assert loaded.source_digest == index.source_digest
    np.testing.assert_array_equal(loaded.text_nength.values, index.text_nength.values)
    assert loaded.alphabet is None


def test_paper_mode_flag_is_persisted(engine):
    paper = Alphabet(("a", "b", "c"), AlphabetMode.PAPER)
    index = engine.build_index(paper.encode_text(list("cab")), paper)
    assert NengthIndex.from_bytes(index.to_bytes()).mode is AlphabetMode.PAPER


def test_index_layout(index):
    content = index.to_bytes()
    assert content[:4] == b"NNG1"
    assert struct.unpack_from("<II", content, 4) == (1, 2)
    assert struct.unpack_from("<2Q", content, 12) == (2, 3)
    assert len(content) == 12 + 16 + 9 + 16 * 6 + 8


def test_truncated_index_is_rejected(index):
    with pytest.raises(InputFormatError):
        NengthIndex.from_bytes(index.to_bytes()[:-1])
    with pytest.raises(InputFormatError):
        NengthIndex.from_bytes(index.to_bytes()[:20])


def test_bad_magic_or_version_is_rejected(index):
    content = index.to_bytes()
    with pytest.raises(InputFormatError):
        NengthIndex.from_bytes(b"XXXX" + content[4:])
    with pytest.raises(InputFormatError):
        NengthIndex.from_bytes(content[:4] + struct.pack("<I", 2) + content[8:])


def test_unknown_mode_flag_is_rejected(index):
    content = bytearray(index.to_bytes())
    content[12 + 16 + 8] = 7
    with pytest.raises(InputFormatError):
        NengthIndex.from_bytes(bytes(content))


def test_missing_index_file(tmp_path):
    with pytest.raises(InputFormatError):
        NengthIndex.read(tmp_path / "absent.nng")


def test_source_digest_depends_on_shape_and_values(ab):
    flat = ab.encode_text(list("abab"))
    square = ab.encode_text([["a", "b"], ["a", "b"]])
    assert source_digest(flat) != source_digest(square)
    assert source_digest(flat) != source_digest(ab.encode_text(list("abba")))
    assert source_digest(flat) == source_digest(ab.encode_text(list("abab")))
