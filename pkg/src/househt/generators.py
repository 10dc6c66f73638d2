import numpy as np

from .errors import ContractViolation


def gen_random_pencil(n, seed):
    """A with standard normal entries; B the R factor of a Gaussian matrix."""
    if n < 1:
        raise ContractViolation("n must be positive")
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    G = rng.standard_normal((n, n))
    B = np.triu(np.linalg.qr(G, mode="r"))
    return np.asfortranarray(A), np.asfortranarray(B)


def gen_saddlepoint(n, seed):
    """[[X, Y], [Y^T, 0]] - lambda [[I, 0], [0, 0]] with X of order 3n/4.

    X = G^T G + n I is symmetric positive definite for any draw of G.
    """
    if n < 4 or n % 4:
        raise ContractViolation("saddlepoint size must be a positive multiple of 4")
    rng = np.random.default_rng(seed)
    m = 3 * n // 4
    G = rng.standard_normal((m, m))
    X = G.T @ G + n * np.eye(m)
    Y = rng.standard_normal((m, n - m))
    A = np.zeros((n, n))
    A[:m, :m] = X
    A[:m, m:] = Y
    A[m:, :m] = Y.T
    B = np.zeros((n, n))
    B[:m, :m] = np.eye(m)
    return np.asfortranarray(A), np.asfortranarray(B)


def gen_tiny_diagonal_pencil(n, seed, count=None, scale=1e-18):
    """Random pencil whose B has a few diagonal entries scaled to near zero."""
    A, B = gen_random_pencil(n, seed)
    rng = np.random.default_rng([seed, 7])
    count = max(1, n // 8) if count is None else count
    idx = rng.choice(n, size=min(count, n), replace=False)
    for i in idx:
        B[i, i] *= scale * rng.uniform(0.0, 1.0)
    return A, B
