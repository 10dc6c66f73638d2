import numpy as np
import pytest
from hypothesis import given as hgiven, settings, strategies as st

from househt.generators import gen_random_pencil
from househt.givens import givens, reduce_givens
from househt.ht_basic import reduce_basic
from househt.matrix import FlopCounter
from househt.verify import verify


def _apply(g, a, b):
    return g.matrix().T @ np.array([a, b])


def test_givens_examples():
    g = givens(1.0, 0.0)
    assert g.c == 1.0 and g.s == 0.0
    r = _apply(givens(0.0, 1.0), 0.0, 1.0)
    assert abs(r[0]) == 1.0 and r[1] == 0.0
    r = _apply(givens(3.0, 4.0), 3.0, 4.0)
    assert abs(r[0]) == pytest.approx(np.hypot(3, 4), rel=1e-15)
    assert abs(r[1]) <= 1e-15


@settings(max_examples=200, deadline=None)
@hgiven(st.floats(-1e300, 1e300, allow_nan=False), st.floats(-1e300, 1e300, allow_nan=False))
def test_givens_contract(a, b):
    g = givens(a, b)
    assert g.c ** 2 + g.s ** 2 == pytest.approx(1.0, abs=1e-15)
    r = _apply(g, a, b)
    scale = max(abs(a), abs(b))
    assert abs(r[1]) <= 4e-16 * scale
    assert np.all(np.isfinite(r))


def test_n2_unchanged():
    A, B = gen_random_pencil(2, 0)
    H, T, Q, Z, _ = reduce_givens(A, B)
    assert np.array_equal(H, A) and np.array_equal(T, B)


def test_random_n8_verifies():
    A, B = gen_random_pencil(8, 1)
    res = verify(A, B, *reduce_givens(A, B)[:4])
    assert res.passed and res.det_rel_error <= 1e-8


@pytest.mark.parametrize("n", [5, 17, 40])
def test_agrees_with_basic_on_verification(n):
    A, B = gen_random_pencil(n, n)
    assert verify(A, B, *reduce_givens(A, B)[:4]).passed
    assert verify(A, B, *reduce_basic(A, B)[:4]).passed


def test_flop_count_cubic():
    counts = []
    for n in (40, 80):
        fc = FlopCounter()
        A, B = gen_random_pencil(n, 0)
        reduce_givens(A, B, fc)
        counts.append(fc.total)
    # about 14 n^3 for the rotations on A, B, Q and Z
    assert 12 <= counts[1] / 80 ** 3 <= 16
    assert 6.5 <= counts[1] / counts[0] <= 8.5
