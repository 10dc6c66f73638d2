"""Deflation of exactly-zero columns of B before the reduction.

With Z0 moving the zero columns of B to the front, a QR factorization
of the first ell columns of Q0^T A Z0 splits off an ell x ell block that
is already in generalized Schur form (ell infinite eigenvalues), so
only the trailing subpencil has to be reduced.
"""
import numpy as np

from .errors import ContractViolation
from .factorizations import qr_wy
from .ht_basic import _check_pencil
from .matrix import as_fortran
from .reflectors import wy_apply


def _is_diagonal(B):
    return not np.any(B - np.diag(np.diagonal(B)))


def deflate_zero_columns(A, B, counter=None):
    A, B = as_fortran(A), as_fortran(B)
    n = A.shape[0]
    if A.shape != (n, n) or B.shape != (n, n):
        raise ContractViolation("A and B must be square of the same size")
    zero = [c for c in range(n) if not np.any(B[:, c])]
    ell = len(zero)
    if ell == 0:
        return A, B, np.eye(n, order="F"), np.eye(n, order="F"), 0
    rest = [c for c in range(n) if c not in set(zero)]
    order = np.array(zero + rest)
    Z = np.asfortranarray(np.eye(n)[:, order])
    Q = Z.copy() if _is_diagonal(B) else np.eye(n, order="F")
    A1 = np.asfortranarray(Q.T @ A @ Z)
    B1 = np.asfortranarray(Q.T @ B @ Z)

    wy, R = qr_wy(A1[:, :ell], counter)
    A1[:, :ell] = R
    wy_apply(A1[:, ell:], wy, "left", True, counter)
    wy_apply(B1[:, ell:], wy, "left", True, counter)
    wy_apply(Q, wy, "right", False, counter)
    B1[:, :ell] = 0.0

    if ell < n:
        # the left transform fills B22; a QR makes it triangular again
        wy2, R22 = qr_wy(B1[ell:, ell:], counter)
        B1[ell:, ell:] = R22
        wy_apply(A1[ell:, ell:], wy2, "left", True, counter)
        wy_apply(Q[:, ell:], wy2, "right", False, counter)
    return A1, B1, Q, Z, ell


def reduce_with_preprocessing(A, B, reducer):
    """Deflate zero columns of B, reduce the trailing subpencil with
    `reducer(A22, B22) -> (H, T, Q, Z, report)` and assemble the full result."""
    A, B = _check_pencil(A, B)
    A1, B1, Q0, Z0, ell = deflate_zero_columns(A, B)
    if ell == 0:
        return reducer(A1, B1) + (0,)
    H22, T22, Q22, Z22, report = reducer(A1[ell:, ell:], B1[ell:, ell:])
    H, T = A1, B1
    H[ell:, ell:] = H22
    T[ell:, ell:] = T22
    H[:ell, ell:] = H[:ell, ell:] @ Z22
    T[:ell, ell:] = T[:ell, ell:] @ Z22
    Q0[:, ell:] = Q0[:, ell:] @ Q22
    Z0[:, ell:] = Z0[:, ell:] @ Z22
    return H, T, Q0, Z0, report, ell
