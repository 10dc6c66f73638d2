"""Householder reflectors H = I - beta*v*v^T and their WY aggregates."""
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .matrix import as_array


@dataclass
class Reflector:
    """v has v[0] = 1; beta = 0 encodes the identity.

    `alpha` is the first entry of H x for the vector x the reflector was
    built from.
    """
    v: np.ndarray
    beta: float
    alpha: float = 0.0

    @property
    def is_identity(self):
        return self.beta == 0.0

    def __len__(self):
        return self.v.shape[0]


def house(x):
    x = np.asarray(x, dtype=np.float64).ravel()
    m = x.shape[0]
    if m == 0:
        raise ContractViolation("house needs a nonempty vector")
    v = np.zeros(m)
    v[0] = 1.0
    if m == 1 or not np.any(x[1:]):
        return Reflector(v, 0.0, float(x[0]))
    # the reflector is invariant under scaling of x
    scale = float(np.max(np.abs(x)))
    if not np.isfinite(scale):
        raise ContractViolation("house needs a finite vector")
    y = x / scale
    alpha = float(y[0])
    xnorm = float(np.linalg.norm(y[1:]))
    beta_img = -np.copysign(np.hypot(alpha, xnorm), alpha)
    if alpha == 0.0:
        beta_img = -abs(beta_img)
    v[1:] = y[1:] / (alpha - beta_img)
    beta = (beta_img - alpha) / beta_img
    return Reflector(v, float(beta), float(beta_img * scale))


def apply_reflector(M, h, side, counter=None):
    a = as_array(M)
    m = h.v.shape[0]
    if side == "left":
        if a.shape[0] != m:
            raise ContractViolation("reflector length does not match rows")
        if h.beta != 0.0:
            w = h.v @ a
            a -= np.outer(h.beta * h.v, w)
    elif side == "right":
        if a.shape[1] != m:
            raise ContractViolation("reflector length does not match columns")
        if h.beta != 0.0:
            w = a @ h.v
            a -= np.outer(w, h.beta * h.v)
    else:
        raise ContractViolation(f"side must be left or right, got {side!r}")
    if counter is not None and h.beta != 0.0:
        counter.add(4 * a.shape[0] * a.shape[1])
    return M


class CompactWY:
    """I - V T V^T with V stored in a growable m x capacity buffer.

    Columns of V are arbitrary full-length vectors; the usual unit lower
    trapezoidal shape is only enforced by `wy_append`.
    """

    def __init__(self, m, capacity=0):
        self.m = int(m)
        self._V = np.zeros((self.m, max(capacity, 1)), order="F")
        self._T = np.zeros((max(capacity, 1), max(capacity, 1)), order="F")
        self.k = 0

    @classmethod
    def from_factors(cls, V, T):
        V = np.asarray(V, dtype=np.float64)
        T = np.asarray(T, dtype=np.float64)
        m, k = V.shape
        if T.shape != (k, k):
            raise ContractViolation("T must be k x k")
        wy = cls(m, k)
        wy._V[:, :k] = V
        wy._T[:k, :k] = T
        wy.k = k
        return wy

    @property
    def V(self):
        return self._V[:, :self.k]

    @property
    def T(self):
        return self._T[:self.k, :self.k]

    def _grow(self):
        cap = 2 * self._V.shape[1]
        V = np.zeros((self.m, cap), order="F")
        V[:, :self.k] = self.V
        T = np.zeros((cap, cap), order="F")
        T[:self.k, :self.k] = self.T
        self._V, self._T = V, T

    def append(self, v, beta, counter=None):
        """Right-multiply by I - beta*v*v^T, in place."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.m,):
            raise ContractViolation("reflector length does not match V")
        k = self.k
        if k == self._V.shape[1]:
            self._grow()
        self._V[:, k] = v
        if k:
            z = self.V.T @ v
            self._T[:k, k] = -beta * (self.T @ z)
            if counter is not None:
                counter.add(2 * self.m * k + k * k)
        self._T[k, k] = beta
        self.k = k + 1
        return self

    def drop_last(self):
        if self.k == 0:
            raise ContractViolation("nothing to drop")
        self.k -= 1
        self._V[:, self.k] = 0.0
        self._T[:self.k + 1, self.k] = 0.0
        return self

    def copy(self):
        return CompactWY.from_factors(self.V.copy(), self.T.copy())

    def transposed(self):
        """WY for (I - V T V^T)^T."""
        return CompactWY.from_factors(self.V.copy(), self.T.T.copy())

    def to_dense(self):
        return np.eye(self.m) - self.V @ self.T @ self.V.T


@dataclass
class RegularWY:
    V: np.ndarray
    W: np.ndarray

    def to_dense(self):
        return np.eye(self.V.shape[0]) - self.V @ self.W.T


def wy_append(Wy, h, counter=None):
    """Return a new aggregate equal to Wy * h; Wy is left untouched.

    A reflector shorter than Wy.m is embedded at the bottom rows.
    """
    m = Wy.m
    v = np.asarray(h.v, dtype=np.float64)
    if v.shape[0] > m:
        raise ContractViolation("reflector longer than the aggregate")
    lead = m - v.shape[0]
    if lead < Wy.k:
        raise ContractViolation(
            "reflector support must start below the previous column")
    full = np.zeros(m)
    full[lead:] = v
    out = Wy.copy()
    out.append(full, h.beta, counter)
    return out


def wy_apply(M, Wy, side, trans=False, counter=None):
    """M <- H M or M H (H^T with `trans`) where H = I - V T V^T."""
    a = as_array(M)
    k = Wy.k
    if side not in ("left", "right"):
        raise ContractViolation(f"side must be left or right, got {side!r}")
    dim = a.shape[0] if side == "left" else a.shape[1]
    if dim != Wy.m:
        raise ContractViolation("WY dimension does not match the matrix")
    if k == 0 or a.size == 0:
        return M
    V = Wy.V
    T = Wy.T.T if trans else Wy.T
    r = a.shape[1] if side == "left" else a.shape[0]
    if side == "left":
        W = V.T @ a
        W = T @ W
        a -= V @ W
    else:
        W = a @ V
        W = W @ T
        a -= W @ V.T
    if counter is not None:
        counter.add(4 * r * Wy.m * k + r * k * k)
    return M


def wy_to_regular(Wy):
    return RegularWY(Wy.V.copy(), Wy.V @ Wy.T.T)
