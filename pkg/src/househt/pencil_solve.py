"""Linear systems behind opposite reflectors.

The right reflector that reduces column j+1 of a transformed B is the
Householder reflector of x = B22^{-1} e1.  During a panel B is only
known in factored form (I - U S U^T)^T B (I - V T V^T), so solves go
through the enlarged local system starting at row q = j + 1 - k, where
k is the number of right reflectors accumulated so far.  That solve is
not backward stable in general, hence the refinement loop.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ContractViolation, SingularSystemError
from .factorizations import lu_pp
from .matrix import U, as_array, frob_norm, structure_defect
from .reflectors import house


class BlockTriangularB:
    """Upper block triangular B with diagonal blocks delimited by `offsets`.

    `B` is shared, not copied: drivers mutate it in place and then call
    `set_offsets` / `refresh`.  Runs of 1x1 blocks are handled by plain
    back substitution; larger blocks get cached LU factors.
    """

    def __init__(self, B, offsets=None, bnorm=None, check=True):
        B = as_array(B)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise ContractViolation("B must be square")
        self.B = B
        self.n = B.shape[0]
        self.cache = {}
        self.set_offsets(range(self.n + 1) if offsets is None else offsets,
                         check=check)
        self.bnorm = frob_norm(B) if bnorm is None else float(bnorm)

    def set_offsets(self, offsets, check=True):
        offs = [int(o) for o in offsets]
        if self.n == 0:
            offs = [0]
        if check and self.n:
            if structure_defect(self.B, "block_upper_triangular", offs) != 0.0:
                raise ContractViolation("B is not block upper triangular")
        self.offsets = offs
        self.cache = {}
        segs = []
        for o0, o1 in zip(offs, offs[1:]):
            if o1 - o0 == 1 and segs and segs[-1][2] == "tri":
                segs[-1][1] = o1
            else:
                segs.append([o0, o1, "tri" if o1 - o0 == 1 else "lu"])
        self.segments = [tuple(s) for s in segs]

    def refresh(self, start=0):
        """(Re)compute LU factors of every large block at or below `start`."""
        for o0, o1, kind in self.segments:
            if kind == "lu" and o0 >= start:
                self.cache[o0] = lu_pp(self.B[o0:o1, o0:o1])

    def factors(self, o0):
        if o0 not in self.cache:
            o1 = next(s[1] for s in self.segments if s[0] == o0)
            self.cache[o0] = lu_pp(self.B[o0:o1, o0:o1])
        return self.cache[o0]

    def is_boundary(self, i):
        return i in self.offsets

    def matvec(self, w, start=0, counter=None):
        """B[start:, start:] @ w using the block structure."""
        n = self.n
        out = np.zeros(n - start)
        flops = 0
        for o0, o1, _ in self.segments:
            if o1 <= start:
                continue
            o0 = max(o0, start)
            out[o0 - start:o1 - start] = self.B[o0:o1, o0:] @ w[o0 - start:]
            flops += 2 * (o1 - o0) * (n - o0)
        if counter is not None:
            counter.add(flops)
        return out


@dataclass
class SolveOutcome:
    x: np.ndarray
    ir_steps: int
    converged: bool
    final_residual: float


def _drawer(rng, bnorm):
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)

    def draw():
        while True:
            val = 2.0 * U * rng.standard_normal() * bnorm
            if abs(val) >= 0.5 * U * bnorm:
                return val
    return draw


def desingularize_diagonal(Bt, rng_seed, start=0):
    """Replace tiny pivots of the diagonal blocks at or below `start`.

    For 1x1 blocks the diagonal entry itself is replaced.  Larger blocks
    are factored with a pivot floor and the implied single-entry changes
    are written back into B, so the refreshed LU factors B exactly.
    """
    if Bt.bnorm <= 0.0 or not np.any(Bt.B):
        raise ContractViolation("cannot desingularize an all-zero B")
    floor = U * Bt.bnorm
    draw = _drawer(rng_seed, Bt.bnorm)
    count = 0
    B = Bt.B
    for o0, o1, kind in Bt.segments:
        if o1 <= start:
            continue
        if kind == "tri":
            o0 = max(o0, start)
            for i in np.flatnonzero(np.abs(np.diagonal(B)[o0:o1]) < floor):
                B[o0 + i, o0 + i] = draw()
                count += 1
        else:
            F = lu_pp(B[o0:o1, o0:o1], pivot_floor=floor, draw=draw)
            for r, c, delta in F.modifications:
                B[o0 + r, o0 + c] += delta
            count += len(F.modifications)
            Bt.cache[o0] = F
    return Bt, count


def block_back_substitute(Bt, rhs, start=0, counter=None):
    """Solve B[start:, start:] y = rhs; `start` must be a block boundary."""
    n = Bt.n
    y = np.array(rhs, dtype=np.float64)
    if y.shape != (n - start,):
        raise ContractViolation("right-hand side has the wrong length")
    if start not in Bt.offsets:
        raise ContractViolation("solve must start at a block boundary")
    B = Bt.B
    flops = 0
    for o0, o1, kind in reversed(Bt.segments):
        if o1 <= start:
            break
        o0 = max(o0, start)
        a, b = o0 - start, o1 - start
        if o1 < n:
            y[a:b] -= B[o0:o1, o1:] @ y[b:]
            flops += 2 * (o1 - o0) * (n - o1)
        if kind == "tri":
            d = np.diagonal(B)[o0:o1]
            if np.any(d == 0.0):
                raise SingularSystemError("zero on the diagonal of B")
            y[a:b] = solve_triangular(B[o0:o1, o0:o1], y[a:b], lower=False,
                                      check_finite=False)
            flops += (o1 - o0) ** 2
        else:
            y[a:b] = Bt.factors(o0).solve(y[a:b])
            flops += 2 * (o1 - o0) ** 2
    if counter is not None:
        counter.add(flops)
    return y


def _local_start(Bt, Uwy, Vwy, j):
    k = Vwy.k
    q = j + 1 - k
    m = Bt.n - q
    if q < 0 or Uwy.m != m or Vwy.m != m:
        raise ContractViolation("reflector aggregates do not match column j")
    if Uwy.k not in (k, k + 1):
        raise ContractViolation("left aggregate must have k or k+1 reflectors")
    return q, k


def _solve(Bt, Uwy, Vwy, q, k, c, counter):
    m = Bt.n - q
    e = np.zeros(m)
    e[k:] = c
    if Uwy.k:
        Ue = Uwy.V[k:, :].T @ c
        e -= Uwy.V @ (Uwy.T @ Ue)
    y = block_back_substitute(Bt, e, q, counter)
    if Vwy.k:
        y -= Vwy.V @ (Vwy.T.T @ (Vwy.V.T @ y))
    if counter is not None:
        kk = Uwy.k + Vwy.k
        counter.add(4 * m * kk + Uwy.k ** 2 + Vwy.k ** 2)
    return y[k:]


def _residual(Bt, Uwy, Vwy, q, k, c, xhat, counter):
    m = Bt.n - q
    w = np.zeros(m)
    w[k:] = xhat
    if Vwy.k:
        w -= Vwy.V @ (Vwy.T @ (Vwy.V[k:, :].T @ xhat))
    w = Bt.matvec(w, q, counter)
    if Uwy.k:
        w -= Uwy.V @ (Uwy.T.T @ (Uwy.V.T @ w))
    if counter is not None:
        kk = Uwy.k + Vwy.k
        counter.add(4 * m * kk + Uwy.k ** 2 + Vwy.k ** 2)
    return c - w[k:]


def _e1(length):
    c = np.zeros(length)
    if length:
        c[0] = 1.0
    return c


def solve_factored_e1(Bt, Uwy, Vwy, j, counter=None):
    """Candidate x for the transformed trailing system B~22 x = e1."""
    q, k = _local_start(Bt, Uwy, Vwy, j)
    return _solve(Bt, Uwy, Vwy, q, k, _e1(Bt.n - j - 1), counter)


def residual_e1(Bt, Uwy, Vwy, j, xhat, counter=None):
    q, k = _local_start(Bt, Uwy, Vwy, j)
    xhat = np.asarray(xhat, dtype=np.float64)
    return _residual(Bt, Uwy, Vwy, q, k, _e1(Bt.n - j - 1), xhat, counter)


def solve_with_refinement(Bt, Uwy, Vwy, j, max_iters=10, tol=None,
                          counter=None):
    q, k = _local_start(Bt, Uwy, Vwy, j)
    if tol is None:
        tol = 2.0 * U * Bt.bnorm
    c = _e1(Bt.n - j - 1)
    x = _solve(Bt, Uwy, Vwy, q, k, c, counter)
    steps = 0
    while True:
        r = _residual(Bt, Uwy, Vwy, q, k, c, x, counter)
        rn, xn = float(np.linalg.norm(r)), float(np.linalg.norm(x))
        if not (np.isfinite(rn) and np.isfinite(xn)):
            return SolveOutcome(x, steps, False, rn)
        if xn == 0.0 or rn <= tol * xn:
            return SolveOutcome(x, steps, True, rn)
        if steps == max_iters:
            return SolveOutcome(x, steps, False, rn)
        x = x + _solve(Bt, Uwy, Vwy, q, k, r, counter)
        steps += 1


def opposite_reflector_first(Bt, u_reflector, j, counter=None):
    """Right reflector for column j+1 when the panel holds only u.

    Solves B22 x = e1 - beta*u*u[0] with the untransformed trailing block,
    which is backward stable.
    """
    n = Bt.n
    v = np.asarray(u_reflector.v, dtype=np.float64)
    if v.shape != (n - j - 1,):
        raise ContractViolation("left reflector must act on rows j+1..n")
    rhs = -u_reflector.beta * v[0] * v
    rhs[0] += 1.0
    x = block_back_substitute(Bt, rhs, j + 1, counter)
    return house(x)
