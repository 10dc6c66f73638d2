import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from househt.errors import ParseError, UnsupportedFormatError
from househt.mmio import mm_read, mm_write


def _write(tmp_path, text, name="m.mtx"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_array_column_major(tmp_path):
    p = _write(tmp_path, "%%MatrixMarket matrix array real general\n% c\n2 2\n1\n2\n3\n4\n")
    assert np.array_equal(mm_read(p), [[1, 3], [2, 4]])


def test_coordinate_single_entry(tmp_path):
    p = _write(tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 5.0\n")
    assert np.array_equal(mm_read(p), [[5, 0], [0, 0]])


def test_coordinate_symmetric_mirrored(tmp_path):
    p = _write(tmp_path, "%%MatrixMarket matrix coordinate real symmetric\n"
                         "3 3 3\n1 1 2\n3 1 -1.5\n2 2 1e-3\n")
    M = mm_read(p)
    assert M[2, 0] == -1.5 and M[0, 2] == -1.5 and M[1, 1] == 1e-3


def test_round_trip_7x3(tmp_path):
    M = np.random.default_rng(0).standard_normal((7, 3))
    mm_write(tmp_path / "x.mtx", M)
    assert np.array_equal(mm_read(tmp_path / "x.mtx"), M)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(0, 6), st.integers(0, 6)),
              elements=st.floats(allow_nan=False)))
def test_round_trip_bitwise(tmp_path_factory, M):
    p = tmp_path_factory.mktemp("rt") / "m.mtx"
    mm_write(p, M)
    R = mm_read(p)
    assert R.shape == M.shape
    assert R.tobytes(order="F") == np.asfortranarray(M).tobytes(order="F")


@pytest.mark.parametrize("text,line", [
    ("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n", 5),
    ("%%MatrixMarket matrix array real general\n2 x\n", 2),
    ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 3 5.0\n", 3),
    ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n", 3),
    ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 2\n", 4),
    ("%%MatrixMarket matrix array real general\n1 1\nabc\n", 3),
    ("%MatrixMarket matrix array real general\n1 1\n1\n", 1),
    ("%%MatrixMarket vector array real general\n1 1\n1\n", 1),
])
def test_parse_errors_carry_line(tmp_path, text, line):
    with pytest.raises(ParseError) as info:
        mm_read(_write(tmp_path, text))
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("header", ["coordinate pattern general", "coordinate complex general",
                                    "array complex general", "coordinate real hermitian"])
def test_unsupported(tmp_path, header):
    with pytest.raises(UnsupportedFormatError):
        mm_read(_write(tmp_path, f"%%MatrixMarket matrix {header}\n1 1 1\n1 1 1\n"))


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        mm_read(tmp_path / "nope.mtx")
