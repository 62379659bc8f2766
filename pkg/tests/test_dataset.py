import numpy as np
import pytest

from conftest import write_lines
from lspline.Dataset import Dataset
from lspline.Errors import IoError, ParseError


def test_reads_header_and_rows(tmp_path):
    path = write_lines(tmp_path / "data.csv", "t,z", "0,1.5", "0.5,-2", "1,3e-1")
    data = Dataset.from_csv(path)
    np.testing.assert_array_equal(data.knots, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(data.values, [1.5, -2.0, 0.3])
    assert data.lines == (2, 3, 4)
    assert data.grid.n == 3


def test_header_is_optional(tmp_path):
    data = Dataset.from_csv(write_lines(tmp_path / "data.csv", "0,1", "1,2"))
    assert data.lines == (1, 2)


def test_skips_comments_blank_lines_and_whitespace(tmp_path):
    path = write_lines(
        tmp_path / "data.csv", "# knots", "t, z", "", "  0 , 1", "# mid", "2,  4  "
    )
    data = Dataset.from_csv(path)
    np.testing.assert_array_equal(data.knots, [0.0, 2.0])
    np.testing.assert_array_equal(data.values, [1.0, 4.0])
    assert data.lines == (4, 6)


def test_missing_field(tmp_path):
    path = write_lines(tmp_path / "data.csv", "t,z", "0,1", "1", "2,3")
    with pytest.raises(ParseError) as info:
        Dataset.from_csv(path)
    assert (info.value.line, info.value.column) == (3, 2)
    assert str(info.value).startswith("line 3, column 2:")


def test_extra_field(tmp_path):
    path = write_lines(tmp_path / "data.csv", "0,1", "1,2,3", "2,3")
    with pytest.raises(ParseError) as info:
        Dataset.from_csv(path)
    assert info.value.line == 2


def test_non_numeric_field(tmp_path):
    path = write_lines(tmp_path / "data.csv", "t,z", "0,1", "1,abc")
    with pytest.raises(ParseError, match="abc") as info:
        Dataset.from_csv(path)
    assert (info.value.line, info.value.column) == (3, 2)


@pytest.mark.parametrize("field", ["nan", "inf", "1e400"])
def test_non_finite_field(tmp_path, field):
    path = write_lines(tmp_path / "data.csv", "0,1", f"{field},2", "3,4")
    with pytest.raises(ParseError) as info:
        Dataset.from_csv(path)
    assert (info.value.line, info.value.column) == (2, 1)


@pytest.mark.parametrize("knot", ["1", "0.5"])
def test_knots_must_increase(tmp_path, knot):
    path = write_lines(tmp_path / "data.csv", "t,z", "0,0", "1,1", f"{knot},0")
    with pytest.raises(ParseError, match="strictly increasing") as info:
        Dataset.from_csv(path)
    assert (info.value.line, info.value.column) == (4, 1)


def test_needs_two_rows(tmp_path):
    with pytest.raises(ParseError):
        Dataset.from_csv(write_lines(tmp_path / "data.csv", "t,z", "0,1"))
    with pytest.raises(ParseError):
        Dataset.from_csv(write_lines(tmp_path / "data.csv", "t,z"))
    with pytest.raises(ParseError):
        Dataset.from_csv(write_lines(tmp_path / "data.csv", "# nothing"))


def test_invalid_utf8(tmp_path):
    path = tmp_path / "data.csv"
    path.write_bytes(b"t,z\n0,1\n1,\xff\n")
    with pytest.raises(ParseError) as info:
        Dataset.from_csv(path)
    assert info.value.line == 3


def test_missing_file(tmp_path):
    with pytest.raises(IoError) as info:
        Dataset.from_csv(tmp_path / "absent.csv")
    assert info.value.exit_code == 3


@pytest.mark.parametrize("row", ["nan,nan", "inf,1", "0,-inf"])
def test_non_finite_first_row_is_data_not_header(tmp_path, row):
    path = write_lines(tmp_path / "data.csv", row, "0,1", "1,2", "2,0")
    with pytest.raises(ParseError) as info:
        Dataset.from_csv(path)
    assert info.value.line == 1
    assert info.value.exit_code == 2
