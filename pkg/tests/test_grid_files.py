import pytest

from grid import IntGrid
from grid_files import GridFiles
from nength_errors import InputFormatError

SQUARE = IntGrid([[1, 0, 2], [-3, 4, 9]])


@pytest.mark.parametrize("suffix", [".ngt", ".ngb"])
def test_grid_survives_write_and_read(tmp_path, suffix):
    path = tmp_path / f"text{suffix}"
    GridFiles().write_grid(SQUARE, path)
    assert GridFiles().read_grid(path) == SQUARE


def test_text_format_layout():
    assert GridFiles().to_text(SQUARE) == "NGT1\n2\n2 3\n1 0 2\n-3 4 9\n"


def test_text_values_may_be_spread_over_any_lines(tmp_path):
    path = tmp_path / "loose.ngt"
    path.write_text("NGT1\n1\n4\n1 2\n3\n\n4\n", encoding="utf-8")
    assert GridFiles().read_grid(path) == IntGrid([1, 2, 3, 4])


def test_binary_format_header():
    content = GridFiles().to_binary(IntGrid([7]))
    assert content[:4] == b"NGB1"
    assert len(content) == 4 + 4 + 8 + 8


@pytest.mark.parametrize(
    "content",
    [
        "NGT2\n1\n2\n1 2\n",
        "NGT1\n1\n3\n1 2\n",
        "NGT1\n2\n3\n1 2 3\n",
        "NGT1\n1\n2\n1 x\n",
        "NGT1\n1\n0\n",
        "NGT1\n1\n2\n1 99999999999999999999\n",
        "NGT1\n1\n1\n-9223372036854775809\n",
    ],
)
def test_malformed_text_grids_are_rejected(tmp_path, content):
    path = tmp_path / "bad.ngt"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(InputFormatError):
        GridFiles().read_grid(path)


def test_truncated_binary_grid_is_rejected(tmp_path):
    path = tmp_path / "short.ngb"
    path.write_bytes(GridFiles().to_binary(SQUARE)[:-3])
    with pytest.raises(InputFormatError):
        GridFiles().read_grid(path)


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(InputFormatError):
        GridFiles().read_grid(tmp_path / "absent.ngt")
