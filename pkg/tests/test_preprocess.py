import numpy as np
import pytest
from functools import partial

from househt.generators import gen_saddlepoint
from househt.ht_blocked import house_ht
from househt.ht_basic import reduce_basic
from househt.matrix import U, structure_defect
from househt.preprocess import deflate_zero_columns, reduce_with_preprocessing
from househt.report import HtConfig
from househt.verify import verify


def test_no_zero_columns():
    A = np.random.default_rng(0).standard_normal((4, 4))
    A1, B1, Q, Z, ell = deflate_zero_columns(A, np.eye(4))
    assert ell == 0 and np.array_equal(A1, A) and np.array_equal(B1, np.eye(4))
    assert np.array_equal(Q, np.eye(4)) and np.array_equal(Z, np.eye(4))


def test_2x2_hand_case():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    B = np.diag([1.0, 0.0])
    A1, B1, Q, Z, ell = deflate_zero_columns(A, B)
    assert ell == 1
    assert A1[1, 0] == 0.0 and np.all(B1[:, 0] == 0.0)
    # the zero column is moved first and Q0 = Z0 keeps B diagonal;
    # then a 2x1 QR of [4, 2]^T gives |a11| = sqrt(20)
    assert abs(A1[0, 0]) == pytest.approx(np.sqrt(20.0), rel=1e-15)
    assert np.allclose(Q.T @ A @ Z, A1, atol=1e-15)
    assert np.allclose(Q.T @ B @ Z, B1, atol=1e-15)


def test_stable_permutation_and_triangular_trailing():
    rng = np.random.default_rng(2)
    n = 9
    A = rng.standard_normal((n, n))
    B = np.triu(rng.standard_normal((n, n)))
    zero = [2, 5, 6]
    B[:, zero] = 0.0
    A1, B1, Q, Z, ell = deflate_zero_columns(A, B)
    assert ell == 3
    assert [int(np.argmax(Z[:, c])) for c in range(3)] == zero
    assert np.all(np.tril(A1[:, :ell], -1) == 0) and np.all(B1[:, :ell] == 0)
    assert structure_defect(B1[ell:, ell:], "upper_triangular") == 0.0
    assert np.linalg.norm(Q.T @ A @ Z - A1) <= 50 * n * U * np.linalg.norm(A)
    assert np.linalg.norm(Q.T @ B @ Z - B1) <= 50 * n * U * np.linalg.norm(B)


def test_near_zero_column_not_deflated():
    B = np.eye(4)
    B[2, 2] = 1e-300
    assert deflate_zero_columns(np.eye(4), B)[4] == 0


@pytest.mark.parametrize("reducer", ["basic", "blocked"])
def test_full_result_verifies(reducer):
    A, B = gen_saddlepoint(40, 1)
    f = reduce_basic if reducer == "basic" else partial(house_ht, config=HtConfig(nb=4))
    H, T, Q, Z, rep, ell = reduce_with_preprocessing(A, B, f)
    assert ell == 10
    assert verify(A, B, H, T, Q, Z).passed


def test_saddlepoint_100_preprocessing_reduces_refinement():
    A, B = gen_saddlepoint(100, 0)
    n = 100
    off = house_ht(A, B)[4]
    on = reduce_with_preprocessing(A, B, house_ht)[4]
    assert deflate_zero_columns(A, B)[4] == n // 4
    assert off.ir_extra_columns / n > 0.10
    assert on.ir_extra_columns < off.ir_extra_columns


@pytest.mark.xfail(strict=True, reason="known shortfall: the columns right after the last "
                   "remaining infinite eigenvalue still need refinement; see decisions ledger")
def test_saddlepoint_100_preprocessed_rate_below_two_percent():
    A, B = gen_saddlepoint(100, 0)
    on = reduce_with_preprocessing(A, B, house_ht)[4]
    assert on.ir_extra_columns / 100 < 0.02
