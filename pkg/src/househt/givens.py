"""Rotation-based reduction used as an independent reference and as the
flop baseline.  Column j of A is annihilated bottom up; every left
rotation creates one fill-in on the subdiagonal of B, which a right
rotation removes straight away."""
from dataclasses import dataclass
import math

import numpy as np

from .matrix import FlopCounter
from .ht_basic import _check_pencil
from .report import ReductionReport


@dataclass
class GivensRotation:
    c: float
    s: float

    def matrix(self):
        """G with G^T [a, b] = [r, 0]."""
        return np.array([[self.c, self.s], [-self.s, self.c]])


def givens(a, b):
    if b == 0.0:
        return GivensRotation(1.0, 0.0)
    r = math.hypot(a, b)
    return GivensRotation(a / r, -b / r)


def reduce_givens(A, B, counter=None):
    A, B = _check_pencil(A, B)
    n = A.shape[0]
    counter = FlopCounter() if counter is None else counter
    start = counter.total
    # Q and Z are accumulated transposed so that both updates act on rows.
    Qt = np.eye(n)
    Zt = np.eye(n)
    for j in range(n - 2):
        for i in range(n - 1, j + 1, -1):
            a, b = A[i - 1, j], A[i, j]
            if b != 0.0:
                g = givens(a, b)
                Gt = g.matrix().T
                A[i - 1:i + 1, j:] = Gt @ A[i - 1:i + 1, j:]
                A[i, j] = 0.0
                B[i - 1:i + 1, i - 1:] = Gt @ B[i - 1:i + 1, i - 1:]
                Qt[i - 1:i + 1, :] = Gt @ Qt[i - 1:i + 1, :]
                counter.add(6 * (2 * n - j - i + 1 + n))
            a, b = B[i, i], B[i, i - 1]
            if b != 0.0:
                g = givens(a, b)
                c, s = g.c, g.s
                # columns (i, i-1) play the roles of (a, b)
                R = np.array([[c, s], [-s, c]])
                cols = np.stack((A[:, i], A[:, i - 1]))
                A[:, i], A[:, i - 1] = R.T @ cols
                cols = np.stack((B[:i + 1, i], B[:i + 1, i - 1]))
                B[:i + 1, i], B[:i + 1, i - 1] = R.T @ cols
                B[i, i - 1] = 0.0
                Zt[[i, i - 1], :] = R.T @ Zt[[i, i - 1], :]
                counter.add(6 * (2 * n + i + 1))
    report = ReductionReport(flops=counter.total - start)
    return A, B, np.asfortranarray(Qt.T), np.asfortranarray(Zt.T), report
