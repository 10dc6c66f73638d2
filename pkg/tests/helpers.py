import numpy as np

from househt.reflectors import CompactWY, house


def explicit_reflector(h):
    """Dense I - beta v v^T, formed entry by entry."""
    return np.eye(len(h.v)) - h.beta * np.outer(h.v, h.v)


def random_wy(rng, m, k, first=0):
    """k random reflectors, the i-th supported on rows first+i..m-1."""
    wy = CompactWY(m, k)
    for i in range(k):
        h = house(rng.standard_normal(m - first - i))
        v = np.zeros(m)
        v[first + i:] = h.v
        wy.append(v, h.beta)
    return wy


def panel_state(B, q, k, rng, extra_left=True, left_vectors=None):
    """Valid factored panel state on the trailing block B[q:, q:].

    Left reflectors are random (or built from `left_vectors`); each right
    reflector comes from a dense solve with the explicitly formed
    transformed block, so the first k columns of the transformed B are
    reduced, exactly as the driver leaves them.  Returns (j, Uwy, Vwy).
    """
    n = B.shape[0]
    m = n - q
    Bq = np.asarray(B[q:, q:], dtype=np.float64)
    Uwy, Vwy = CompactWY(m, k + 1), CompactWY(m, k)
    for i in range(k + int(extra_left)):
        x = rng.standard_normal(m - i) if left_vectors is None else left_vectors[i]
        h = house(x)
        u = np.zeros(m)
        u[i:] = h.v
        Uwy.append(u, h.beta)
        if i == k:
            break
        Bt = Uwy.to_dense().T @ Bq @ Vwy.to_dense()
        e = np.zeros(m - i)
        e[0] = 1.0
        g = house(np.linalg.solve(Bt[i:, i:], e))
        v = np.zeros(m)
        v[i:] = g.v
        Vwy.append(v, g.beta)
    return q + k - 1, Uwy, Vwy


def tilde_b22(B, Uwy, Vwy, q, k, dtype=np.longdouble):
    """(I - U S U^T)^T B (I - V T V^T), trailing block, in extended precision."""
    Bq = np.asarray(B[q:, q:], dtype=dtype)
    m = Bq.shape[0]
    I = np.eye(m, dtype=dtype)
    Uv, Ut = Uwy.V.astype(dtype), Uwy.T.astype(dtype)
    Vv, Vt = Vwy.V.astype(dtype), Vwy.T.astype(dtype)
    left = (I - Uv @ Ut @ Uv.T).T
    right = I - Vv @ Vt @ Vv.T
    return (left @ Bq @ right)[k:, k:]


def rel_backward(A, B, H, T, Q, Z):
    na, nb = np.linalg.norm(A), np.linalg.norm(B)
    return (np.linalg.norm(A - Q @ H @ Z.T) / na,
            np.linalg.norm(B - Q @ T @ Z.T) / nb)



def crafted_state(sigma, n=6, seed=0):
    """k=1 state whose transformed leading entry is ~sigma while the
    trailing block stays well conditioned: B gets a singular value sigma
    and the first left reflector maps e1 onto its left singular vector."""
    rng = np.random.default_rng(seed)
    B = np.triu(rng.standard_normal((n, n))) + 3 * np.eye(n)
    B[n - 1, n - 1] = sigma
    q, k = 1, 1
    W = np.linalg.svd(B[q:, q:])[0]
    j, Uwy, Vwy = panel_state(B, q, k, rng, True,
                              [W[:, -1], rng.standard_normal(n - q - 1)])
    return B, j, q, k, Uwy, Vwy


def oracle_residual(B, Uwy, Vwy, q, k, x):
    """||e1 - B~22 x|| with B~22 formed and applied in extended precision."""
    B22 = tilde_b22(B, Uwy, Vwy, q, k)
    e = np.zeros(len(x), dtype=np.longdouble)
    e[0] = 1
    return float(np.linalg.norm((e - B22 @ np.asarray(x, dtype=np.longdouble)).astype(float)))
