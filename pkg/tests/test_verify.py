import numpy as np

from househt.generators import gen_random_pencil
from househt.ht_basic import reduce_basic
from househt.matrix import U
from househt.verify import verify


def test_trivial_pass():
    rng = np.random.default_rng(0)
    A = np.triu(rng.standard_normal((5, 5)), -1)
    B = np.triu(rng.standard_normal((5, 5)))
    I = np.eye(5)
    res = verify(A, B, A, B, I, I)
    assert res.passed and res.residual_a == 0.0 and res.det_rel_error == 0.0


def test_hessenberg_perturbation_fails():
    rng = np.random.default_rng(1)
    A = np.triu(rng.standard_normal((5, 5)), -1)
    B = np.triu(rng.standard_normal((5, 5)))
    H = A.copy()
    H[2, 0] = 1e-8
    res = verify(A, B, H, B, np.eye(5), np.eye(5))
    assert res.hessenberg_defect == 1e-8 and not res.passed


def test_basic_output_passes_with_thresholds():
    A, B = gen_random_pencil(20, 2)
    res = verify(A, B, *reduce_basic(A, B)[:4])
    assert res.passed
    assert res.thresholds["orth_q"] == 100 * 20 * U
    assert res.thresholds["residual_a"] == 100 * 20 * U * np.linalg.norm(A)
    assert len(res.det_lambdas) == 5 and res.det_rel_error <= 1e-8


def test_det_mismatch_detected():
    A, B = gen_random_pencil(6, 3)
    H, T, Q, Z, _ = reduce_basic(A, B)
    res = verify(A, 2 * B, H, T, Q, Z)
    assert not res.passed and res.det_rel_error > 1e-8


def test_large_n_skips_det():
    n = 65
    I = np.eye(n)
    res = verify(I, I, I, I, I, I)
    assert res.det_rel_error is None and res.passed
