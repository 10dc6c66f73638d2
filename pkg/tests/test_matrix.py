import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from househt.errors import ContractViolation
from househt.matrix import DenseMatrix, FlopCounter, frob_norm, gemm_acc, structure_defect


def test_gemm_identity():
    C = DenseMatrix(2, 2)
    gemm_acc(C, np.eye(2), np.eye(2))
    assert np.array_equal(np.asarray(C), np.eye(2))


def test_gemm_scaled_identity():
    C = np.zeros((2, 2))
    gemm_acc(C, np.array([[1.0, 2], [3, 4]]), np.eye(2), alpha=2.0)
    assert np.array_equal(C, [[2, 4], [6, 8]])


def test_gemm_hand_product():
    C = np.zeros((2, 2))
    gemm_acc(C, np.array([[1.0, 2], [3, 4]]), np.array([[5.0, 6], [7, 8]]))
    assert np.array_equal(C, [[19, 22], [43, 50]])


def test_gemm_transposes_and_beta_flops():
    rng = np.random.default_rng(1)
    A, B, C0 = rng.standard_normal((4, 3)), rng.standard_normal((5, 4)), rng.standard_normal((3, 5))
    C = C0.copy()
    fc = FlopCounter()
    gemm_acc(C, A, B, alpha=0.5, beta=2.0, transA=True, transB=True, counter=fc)
    assert np.allclose(C, 0.5 * A.T @ B.T + 2.0 * C0)
    assert fc.total == 2 * 3 * 5 * 4 + 3 * 5


def test_gemm_mismatch():
    with pytest.raises(ContractViolation):
        gemm_acc(np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 2)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.integers(0, 2 ** 32 - 1))
def test_gemm_matches_triple_loop(m, n, k, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-9, 10, (m, k)).astype(float)
    B = rng.integers(-9, 10, (k, n)).astype(float)
    C = np.zeros((m, n))
    gemm_acc(C, A, B)
    ref = np.zeros((m, n))
    for i in range(m):
        for j in range(n):
            for p in range(k):
                ref[i, j] += A[i, p] * B[p, j]
    assert np.array_equal(C, ref)


def test_frob_norm_examples():
    assert frob_norm(np.zeros((3, 3))) == 0.0
    assert frob_norm(np.eye(3)) == pytest.approx(np.sqrt(3), rel=1e-15)
    assert frob_norm(np.array([[3.0], [4.0]])) == 5.0


def test_frob_norm_sum_of_squares():
    M = np.random.default_rng(2).standard_normal((50, 50))
    assert frob_norm(M) ** 2 == pytest.approx(float(np.sum(M * M)), rel=1e-15)


def test_structure_defect_examples():
    assert structure_defect(np.eye(4), "hessenberg") == 0.0
    M = np.eye(4)
    M[2, 0] = 1e-3
    assert structure_defect(M, "hessenberg") == 1e-3
    blk = np.kron(np.eye(2), np.ones((2, 2)))
    assert structure_defect(blk, "block_upper_triangular", [0, 2, 4]) == 0.0
    assert structure_defect(blk, "upper_triangular") == 1.0


def test_structure_defect_bad_offsets():
    with pytest.raises(ContractViolation):
        structure_defect(np.eye(4), "block_upper_triangular", [0, 3, 2, 4])
    with pytest.raises(ContractViolation):
        structure_defect(np.eye(4), "block_upper_triangular", [0, 2])


def test_view_writes_only_window():
    M = DenseMatrix.from_array(np.arange(20.0).reshape(4, 5))
    before = np.asarray(M).copy()
    V = M.view(1, 3, 2, 5)
    V.array[...] = -1.0
    after = np.asarray(M)
    mask = np.zeros((4, 5), bool)
    mask[1:3, 2:5] = True
    assert np.all(after[mask] == -1.0)
    assert np.array_equal(after[~mask], before[~mask])
    assert V[0, 0] == -1.0 and V.stride == 4


def test_dense_matrix_storage_layout():
    M = DenseMatrix(2, 3, stride=4)
    M[1, 2] = 7.0
    assert M.data[1 + 2 * 4] == 7.0
    with pytest.raises(ContractViolation):
        DenseMatrix(3, 2, stride=2)


def test_flop_counter_monotone():
    fc = FlopCounter()
    fc.add(5)
    with pytest.raises(ContractViolation):
        fc.add(-1)
    assert fc.total == 5
    fc.reset()
    assert fc.total == 0
