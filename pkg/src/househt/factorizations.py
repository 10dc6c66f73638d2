"""QR, QL, RQ and LQ over `house`, blocked LU with partial pivoting, and
the reduced strip transforms that annihilate a block of a strip with
only k reflectors."""
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ContractViolation, NumericalFailure, SingularSystemError
from .matrix import U, as_fortran, frob_norm
from .reflectors import CompactWY, house


def _count(counter, n):
    if counter is not None:
        counter.add(n)


def qr_wy(M, counter=None):
    """Return (Q, R) with Q^T M = R; Q = H_1 ... H_n as a compact WY."""
    R = as_fortran(M)
    m, n = R.shape
    if m < n:
        raise ContractViolation("qr_wy needs rows >= cols")
    Q = CompactWY(m, n)
    for j in range(n):
        h = house(R[j:, j])
        if h.beta != 0.0:
            sub = R[j:, j + 1:]
            w = h.v @ sub
            sub -= np.outer(h.beta * h.v, w)
            R[j, j] = h.alpha
            R[j + 1:, j] = 0.0
            _count(counter, 4 * (m - j) * (n - j - 1) + 3 * (m - j))
        v = np.zeros(m)
        v[j:] = h.v
        Q.append(v, h.beta, counter)
    return Q, R


def ql_wy(M, counter=None):
    """Return (Q, L) with Q^T M = [0; L1], L1 lower triangular at the bottom."""
    L = as_fortran(M)
    m, n = L.shape
    if m < n:
        raise ContractViolation("ql_wy needs rows >= cols")
    Q = CompactWY(m, n)
    for t in range(n):
        c, r = n - 1 - t, m - t
        h = house(L[r - 1::-1, c])
        v = np.zeros(m)
        v[:r] = h.v[::-1]
        if h.beta != 0.0:
            sub = L[:r, :c]
            w = v[:r] @ sub
            sub -= np.outer(h.beta * v[:r], w)
            L[r - 1, c] = h.alpha
            L[:r - 1, c] = 0.0
            _count(counter, 4 * r * c + 3 * r)
        Q.append(v, h.beta, counter)
    return Q, L


def rq_wy(M, counter=None):
    """Return (R, Q) with M = R Q, R upper triangular in its last rows x rows block."""
    R = as_fortran(M)
    m, n = R.shape
    if n < m:
        raise ContractViolation("rq_wy needs cols >= rows")
    P = CompactWY(n, m)
    for t in range(m):
        r, c = m - 1 - t, n - t
        h = house(R[r, c - 1::-1])
        v = np.zeros(n)
        v[:c] = h.v[::-1]
        if h.beta != 0.0:
            sub = R[:r, :c]
            w = sub @ v[:c]
            sub -= np.outer(w, h.beta * v[:c])
            R[r, c - 1] = h.alpha
            R[r, :c - 1] = 0.0
            _count(counter, 4 * r * c + 3 * c)
        P.append(v, h.beta, counter)
    # M P = R with P = H_1 ... H_m, so Q = P^T.
    return R, CompactWY.from_factors(P.V, P.T.T)


def lq_wy(M, counter=None):
    """Return (L, Q) with M = L Q, L lower triangular in its leading block."""
    L = as_fortran(M)
    m, n = L.shape
    if n < m:
        raise ContractViolation("lq_wy needs cols >= rows")
    P = CompactWY(n, m)
    for r in range(m):
        h = house(L[r, r:])
        v = np.zeros(n)
        v[r:] = h.v
        if h.beta != 0.0:
            sub = L[r + 1:, r:]
            w = sub @ h.v
            sub -= np.outer(w, h.beta * h.v)
            L[r, r] = h.alpha
            L[r, r + 1:] = 0.0
            _count(counter, 4 * (m - r - 1) * (n - r) + 3 * (n - r))
        P.append(v, h.beta, counter)
    return L, CompactWY.from_factors(P.V, P.T.T)


@dataclass
class LuFactors:
    """P A = L U with L unit lower and U upper, packed in `LU`.

    Row i of P A is row `pivots[i]` of A.  `modifications` lists the
    (row, col, delta) entries added to A when tiny pivots were replaced.
    """
    LU: np.ndarray
    pivots: np.ndarray
    singular: bool
    modifications: list = field(default_factory=list)

    @property
    def n(self):
        return self.LU.shape[0]

    def L(self):
        return np.tril(self.LU, -1) + np.eye(self.n)

    def U(self):
        return np.triu(self.LU)

    def solve(self, b, counter=None):
        if self.singular or np.any(np.diag(self.LU) == 0.0):
            raise SingularSystemError("LU factors have a zero pivot")
        y = np.asarray(b, dtype=np.float64)[self.pivots]
        y = solve_triangular(self.LU, y, lower=True, unit_diagonal=True,
                             check_finite=False)
        y = solve_triangular(self.LU, y, lower=False, check_finite=False)
        _count(counter, 2 * self.n * self.n)
        return y

    def logabsdet(self):
        d = np.diag(self.LU)
        if np.any(d == 0.0):
            return -np.inf
        return float(np.sum(np.log(np.abs(d))))


_LU_BLOCK = 32


def lu_pp(M, counter=None, pivot_floor=None, draw=None):
    """Blocked right-looking LU with partial pivoting.

    When `pivot_floor` and `draw` are given, a pivot of magnitude below
    the floor is replaced by `draw()`.  That is the same as adding the
    difference to one entry of the input, which is recorded in
    `modifications` so the caller can update its copy of the matrix.
    """
    a = as_fortran(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolation("lu_pp needs a square matrix")
    n = a.shape[0]
    perm = np.arange(n)
    singular = False
    mods = []
    for i0 in range(0, n, _LU_BLOCK):
        i1 = min(n, i0 + _LU_BLOCK)
        for i in range(i0, i1):
            p = i + int(np.argmax(np.abs(a[i:, i])))
            if p != i:
                a[[i, p], :] = a[[p, i], :]
                perm[[i, p]] = perm[[p, i]]
            piv = a[i, i]
            if pivot_floor is not None and abs(piv) < pivot_floor:
                new = draw()
                mods.append((int(perm[i]), i, new - piv))
                a[i, i] = piv = new
            if piv == 0.0:
                singular = True
                continue
            a[i + 1:, i] /= piv
            if i + 1 < i1:
                a[i + 1:, i + 1:i1] -= np.outer(a[i + 1:, i], a[i, i + 1:i1])
            _count(counter, (n - i - 1) * (1 + 2 * (i1 - i - 1)))
        if i1 < n:
            a[i0:i1, i1:] = solve_triangular(
                a[i0:i1, i0:i1], a[i0:i1, i1:], lower=True,
                unit_diagonal=True, check_finite=False)
            a[i1:, i1:] -= a[i1:, i0:i1] @ a[i0:i1, i1:]
            w = i1 - i0
            _count(counter, w * w * (n - i1) + 2 * (n - i1) ** 2 * w)
    return LuFactors(a, perm, singular, mods)


def _guard(residual, C, q, what):
    tol = 100.0 * q * U * frob_norm(C)
    if not residual <= tol:
        raise NumericalFailure(
            f"{what}: annihilated block residual {residual:.3e} exceeds {tol:.3e}")


def reduced_right(C, counter=None):
    """Return (Qt, C Qt^T) where the first q-p columns of C Qt^T are zero."""
    C = as_fortran(C)
    p, q = C.shape
    k = q - p
    if k <= 0:
        raise ContractViolation("reduced_right_transform needs cols > rows")
    _, Q = rq_wy(C, counter)
    Q1 = -(Q.V[:k, :] @ Q.T) @ Q.V.T
    Q1[:, :k] += np.eye(k)
    _count(counter, 2 * k * p * p + 2 * k * p * q)
    _, Qt = lq_wy(Q1, counter)
    out = C.copy()
    W = out @ Qt.V
    out -= (W @ Qt.T.T) @ Qt.V.T
    _count(counter, 4 * p * q * k + p * k * k)
    _guard(frob_norm(out[:, :k]), C, q, "reduced_right_transform")
    out[:, :k] = 0.0
    return Qt, out


def reduced_left(C, counter=None):
    """Return (Qt, Qt^T C) where the last p-q rows of Qt^T C are zero."""
    C = as_fortran(C)
    p, q = C.shape
    k = p - q
    if k <= 0:
        raise ContractViolation("reduced_left_transform needs rows > cols")
    Q, _ = qr_wy(C, counter)
    Q3 = -Q.V @ (Q.T @ Q.V[q:, :].T)
    Q3[q:, :] += np.eye(k)
    _count(counter, 2 * k * q * q + 2 * k * p * q)
    Qt, _ = ql_wy(Q3, counter)
    out = C.copy()
    W = Qt.V.T @ out
    out -= Qt.V @ (Qt.T.T @ W)
    _count(counter, 4 * p * q * k + q * k * k)
    _guard(frob_norm(out[q:, :]), C, p, "reduced_left_transform")
    out[q:, :] = 0.0
    return Qt, out


def reduced_right_transform(C, counter=None):
    """k = cols - rows reflectors whose transpose, applied from the right,
    zeroes the first k columns of C."""
    return reduced_right(C, counter)[0]


def reduced_left_transform(C, counter=None):
    """k = rows - cols reflectors whose transpose, applied from the left,
    zeroes the last k rows of C."""
    return reduced_left(C, counter)[0]
