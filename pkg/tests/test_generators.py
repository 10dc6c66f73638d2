import numpy as np
import pytest

from househt.errors import ContractViolation
from househt.generators import gen_random_pencil, gen_saddlepoint, gen_tiny_diagonal_pencil
from househt.matrix import structure_defect


def test_random_n1():
    A, B = gen_random_pencil(1, 0)
    g = np.random.default_rng(0)
    g.standard_normal((1, 1))
    assert abs(B[0, 0]) == abs(g.standard_normal())


def test_random_deterministic():
    a = gen_random_pencil(5, 7)
    b = gen_random_pencil(5, 7)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_random_b_triangular():
    A, B = gen_random_pencil(50, 1)
    assert structure_defect(B, "upper_triangular") == 0.0


def test_saddlepoint_shapes():
    A, B = gen_saddlepoint(4, 0)
    assert np.array_equal(B, np.diag([1.0, 1.0, 1.0, 0.0]))
    assert A[3, 3] == 0.0 and np.array_equal(A[:3, 3], A[3, :3])
    A, B = gen_saddlepoint(100, 1)
    assert sum(not np.any(B[:, c]) for c in range(100)) == 25
    X = A[:75, :75]
    assert np.array_equal(X, X.T) and np.linalg.eigvalsh(X).min() > 0
    assert np.linalg.matrix_rank(A[:75, 75:]) == 25


def test_saddlepoint_size_contract():
    with pytest.raises(ContractViolation):
        gen_saddlepoint(10, 0)


def test_tiny_diagonal():
    A, B = gen_tiny_diagonal_pencil(40, 0)
    d = np.abs(np.diag(B))
    assert np.sum(d < 1e-10) == 5
    assert structure_defect(B, "upper_triangular") == 0.0
