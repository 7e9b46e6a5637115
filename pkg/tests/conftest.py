import pytest

from alphabet import Alphabet
from circulant_lab import CirculantLab
from naive_oracle import NaiveOracle
from nength_transform import NengthTransform
from pattern_codec import PatternCodec
from search_engine import SearchEngine


@pytest.fixture
def ab():
    return Alphabet(("a", "b"))


@pytest.fixture
def abba(ab):
    return ab.encode_text(list("abba"))


@pytest.fixture
def oracle():
    return NaiveOracle()


@pytest.fixture
def transform():
    return NengthTransform()


@pytest.fixture
def codec():
    return PatternCodec()


@pytest.fixture
def engine():
    return SearchEngine()


@pytest.fixture
def lab():
    return CirculantLab()
