"""Blocked Householder HT reduction.

Columns are reduced in panels of at most nb.  Inside a panel the left
reflectors (U, S) and right reflectors (V, T) are only accumulated;
column j of A is brought up to date on demand and the opposite
reflectors come from solves with the factored B.  At the end of a panel
(or when refinement fails) all reflectors are absorbed into the pencil:

* right: V2 is reduced to [0; L1] by overlapping QL windows whose
  transforms hit B, A and Z, then the small remaining update is done,
  then B is restored from the bottom up with RQ-type strip transforms;
* left: the spike of B is finished, U2 is reduced by overlapping QR
  windows, the small remaining update is done, then B is restored from
  the top down with QR-type strip transforms.

Between panels B is block upper triangular with blocks of size
(ell-1)*nb (block mode) or plain upper triangular (ell == 2 or when
acceleration is off).  The lower profile of B is tracked in
`BStructure` so every transform touches only rows or columns that can
be nonzero.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, NumericalFailure
from .factorizations import qr_wy, ql_wy, reduced_left, reduced_right, rq_wy
from .ht_basic import _check_pencil
from .matrix import U, FlopCounter, frob_norm, structure_defect
from .pencil_solve import (BlockTriangularB, SolveOutcome, desingularize_diagonal,
                           opposite_reflector_first, solve_with_refinement)
from .reflectors import CompactWY, house, wy_apply
from .report import HtConfig, ReductionReport


class BStructure:
    """Lower profile of B: rows >= low[c] of column c are exactly zero.

    `low` is nondecreasing and low[c] >= c + 1.
    """

    def __init__(self, low):
        self.low = np.asarray(low, dtype=np.int64).copy()
        self.n = self.low.shape[0]

    @classmethod
    def triangular(cls, n):
        return cls(np.arange(1, n + 1))

    @classmethod
    def from_matrix(cls, B):
        B = np.asarray(B)
        n = B.shape[0]
        low = np.arange(1, n + 1)
        for c in range(n):
            nz = np.flatnonzero(B[:, c])
            if nz.size:
                low[c] = max(low[c], nz[-1] + 1)
        return cls(np.maximum.accumulate(low))

    def first(self, r, lo=0):
        """Smallest column c >= lo that may be nonzero in row r."""
        return max(lo, int(np.searchsorted(self.low, r, side="right")))

    def offsets(self, start=0):
        n = self.n
        idx = np.arange(start + 1, n)
        inner = idx[self.low[start:n - 1] <= idx]
        return [start] + inner.tolist() + [n]

    def set_triangular(self, c0, c1):
        self.low[c0:c1] = np.arange(c0 + 1, c1 + 1)

    def check(self, B, start=0):
        for c in range(start, self.n):
            if np.any(B[self.low[c]:, c]):
                raise NumericalFailure(f"B profile violated in column {c}")
        if np.any(np.diff(self.low) < 0):
            raise NumericalFailure("B profile is not monotone")


@dataclass
class PanelState:
    s: int
    j: int
    k: int
    Uwy: CompactWY
    Vwy: CompactWY
    Y: np.ndarray
    tol: float = 0.0
    saved: np.ndarray = None
    outcome: SolveOutcome = None
    events: list = field(default_factory=list)

    @property
    def q(self):
        return self.s + 1

    @classmethod
    def start(cls, n, s, nb, tol=0.0):
        m = n - s - 1
        return cls(s, s, 0, CompactWY(m, nb + 1), CompactWY(m, nb),
                   np.zeros((n, nb), order="F"), tol)


def panel_update_column(state, A, counter=None):
    """Apply the k delayed two-sided updates to column j of A."""
    j, k, q = state.j, state.k, state.q
    col = A[:, j]
    if k == 0:
        return A
    col -= state.Y[:, :k] @ state.Vwy.V[j - q, :k]
    Uw = state.Uwy
    a = col[q:]
    a -= Uw.V @ (Uw.T.T @ (Uw.V.T @ a))
    if counter is not None:
        n, m = A.shape[0], Uw.m
        counter.add(2 * n * k + 4 * m * Uw.k + Uw.k ** 2)
    return A


def panel_reduce_column(state, A, Bt, max_ir=10, counter=None):
    """Reduce column j of A from the left and column j+1 of the implicitly
    transformed B from the right.  Returns "ok" or "ir_failure"; on
    failure the left reflector is dropped and column j restored from
    `state.saved` when that is set."""
    n = A.shape[0]
    j, k, q = state.j, state.k, state.q
    m = n - q
    f = house(A[j + 1:, j])
    u = np.zeros(m)
    u[k:] = f.v
    state.Uwy.append(u, f.beta, counter)
    A[j + 1, j] = f.alpha
    A[j + 2:, j] = 0.0
    if counter is not None:
        counter.add(3 * (n - j - 1))

    if k == 0:
        g = opposite_reflector_first(Bt, f, j, counter)
        state.outcome = SolveOutcome(None, 0, True, 0.0)
    else:
        out = solve_with_refinement(Bt, state.Uwy, state.Vwy, j, max_ir,
                                    state.tol, counter)
        state.outcome = out
        if not out.converged:
            state.Uwy.drop_last()
            if state.saved is not None:
                A[:, j] = state.saved
            return "ir_failure"
        g = house(out.x)

    v = np.zeros(m)
    v[k:] = g.v
    Vw = state.Vwy
    if g.beta != 0.0:
        y = A[:, j + 1:] @ g.v
        if k:
            y -= state.Y[:, :k] @ (Vw.V[k:, :].T @ g.v)
        state.Y[:, k] = g.beta * y
    else:
        state.Y[:, k] = 0.0
    if counter is not None:
        counter.add(2 * n * (n - j - 1) + 2 * n * k + 2 * (m - k) * k)
    Vw.append(v, g.beta, counter)
    state.k = k + 1
    state.j = j + 1
    return "ok"


def _grid(n, spacing, lo):
    """Grid points n, n - spacing, ... that are > lo, ascending."""
    if spacing <= 0:
        raise ContractViolation("grid spacing must be positive")
    t = (n - lo - 1) // spacing
    return [n - i * spacing for i in range(t, -1, -1)]


def _spacing(config, k):
    return (config.ell - 1) * config.nb if config.block_mode else k


def _right_windows(p, n, k, spacing):
    wins = []
    a = p
    grid = _grid(n, spacing, p)
    while n - a > k:
        b = next(g for g in grid if g > a + k)
        wins.append((a, b))
        a = b - k
    return wins


def _left_windows(p, n, k, spacing):
    wins = []
    e = n
    grid = _grid(n, spacing, p)
    while e - p > k:
        tops = [g for g in grid if g < e - k]
        a = tops[-1] if tops else p
        wins.append((a, e))
        e = a + k
    return wins


class _Absorber:
    """Shared machinery for absorbing a panel's reflectors."""

    def __init__(self, A, B, Q, Z, struct, config, counter):
        self.A, self.B, self.Q, self.Z = A, B, Q, Z
        self.n = A.shape[0]
        self.struct = struct
        self.config = config
        self.counter = counter

    def _right_transform(self, c0, c1, wy, trans, row_end):
        """Columns [c0, c1) of A, Z and rows [0, row_end) of B times H or H^T."""
        cnt = self.counter
        wy_apply(self.B[:row_end, c0:c1], wy, "right", trans, cnt)
        wy_apply(self.A[:, c0:c1], wy, "right", trans, cnt)
        if self.Z is not None:
            wy_apply(self.Z[:, c0:c1], wy, "right", trans, cnt)

    def _left_transform(self, r0, r1, wy, bcol, acol):
        """H^T on rows [r0, r1) of B (from column bcol) and A (from acol); Q H."""
        cnt = self.counter
        wy_apply(self.B[r0:r1, bcol:], wy, "left", True, cnt)
        wy_apply(self.A[r0:r1, acol:], wy, "left", True, cnt)
        if self.Q is not None:
            wy_apply(self.Q[:, r0:r1], wy, "right", False, cnt)

    def right_restore(self, targets):
        B, st = self.B, self.struct
        tri = not self.config.block_mode
        p = targets[0]
        blocks = list(zip(targets, targets[1:]))
        for r0, r1 in reversed(blocks):
            c0 = st.first(r0, p)
            if c0 >= r0:
                continue
            C = B[r0:r1, c0:r1]
            kk = r0 - c0
            if not tri and kk < r1 - r0:
                wy, out = reduced_right(C, self.counter)
                full = False
            else:
                out, wy = rq_wy(C, self.counter)
                full = True
            wy_apply(B[:r0, c0:r1], wy, "right", True, self.counter)
            B[r0:r1, c0:r1] = out
            wy_apply(self.A[:, c0:r1], wy, "right", True, self.counter)
            if self.Z is not None:
                wy_apply(self.Z[:, c0:r1], wy, "right", True, self.counter)
            st.low[c0:r0] = r0
            if full:
                B[r0:r1, c0:r0] = 0.0
                st.set_triangular(r0, r1)
            else:
                st.low[r0:r1] = r1

    def left_restore(self, targets, acol):
        B, st = self.B, self.struct
        tri = not self.config.block_mode
        for r0, r1 in zip(targets, targets[1:]):
            L = int(st.low[r1 - 1])
            inner = tri and np.any(np.tril(B[r0:r1, r0:r1], -1))
            if L <= r1 and not inner:
                continue
            L = max(L, r1)
            C = B[r0:L, r0:r1]
            kk = L - r1
            if not tri and 0 < kk < r1 - r0:
                wy, out = reduced_left(C, self.counter)
                full = False
            else:
                wy, out = qr_wy(C, self.counter)
                full = True
            B[r0:L, r0:r1] = out
            if full:
                B[r0:L, r0:r1] = np.triu(out)
            if r1 < self.n:
                wy_apply(B[r0:L, r1:], wy, "left", True, self.counter)
            wy_apply(self.A[r0:L, acol:], wy, "left", True, self.counter)
            if self.Q is not None:
                wy_apply(self.Q[:, r0:L], wy, "right", False, self.counter)
            if full:
                st.set_triangular(r0, r1)
            else:
                st.low[r0:r1] = r1
            st.low[r1:] = np.maximum(st.low[r1:], L)

    def absorb_right(self, Vwy, Y, j):
        """Apply the right reflectors; j is the next unreduced column."""
        A, B, n, cnt = self.A, self.B, self.n, self.counter
        k = Vwy.k
        if k == 0:
            return
        q = j + 1 - k
        p = j + 1
        m = n - p
        V1 = Vwy.V[:k, :]
        V2 = np.array(Vwy.V[k:, :], order="F")
        T = Vwy.T
        spacing = _spacing(self.config, k)
        wins = _right_windows(p, n, k, spacing) if m > k else []
        st = self.struct
        for a, b in wins:
            wy, Lw = ql_wy(V2[a - p:b - p, :], cnt)
            V2[a - p:b - p, :] = Lw
            row_end = int(st.low[b - 1])
            self._right_transform(a, b, wy, False, row_end)
            st.low[a:b] = row_end
        kk = min(k, m)
        L1 = V2[m - kk:, :]
        if m > k:
            # exact zeros above the final triangle
            V2[:m - kk, :] = 0.0
        c_tail = n - kk

        # B: W = B V~ with V~ = [V1; 0; L1] in columns q..p-1 and the tail
        W = B[:, q:p] @ V1
        if kk:
            W += B[:, c_tail:] @ L1
        WT = W @ T
        B[:, q:p] -= WT @ V1.T
        if kk:
            B[:, c_tail:] -= WT @ L1.T
        cnt.add(2 * n * k * (k + kk) + n * k * k + 2 * n * k * (k + kk))
        if self.Z is not None:
            Z = self.Z
            W = Z[:, q:p] @ V1
            if kk:
                W += Z[:, c_tail:] @ L1
            WT = W @ T
            Z[:, q:p] -= WT @ V1.T
            if kk:
                Z[:, c_tail:] -= WT @ L1.T
            cnt.add(4 * n * k * (k + kk) + n * k * k)
        # A: Y = A V T was formed before the windows touched A
        A[:, j] -= Y[:, :k] @ V1[k - 1, :]
        if kk:
            A[:, c_tail:] -= Y[:, :k] @ L1.T
        cnt.add(2 * n * k + 2 * n * k * kk)
        if kk:
            st.low[c_tail:] = np.maximum(st.low[c_tail:], n)

        if self.config.block_mode:
            targets = [p] + [g for g in _grid(n, spacing, p)]
        else:
            targets = [p] + [b for _, b in wins]
            if targets[-1] != n:
                targets.append(n)
        self.right_restore(targets)

    def absorb_left(self, Uwy, j):
        """Apply the left reflectors after `absorb_right`."""
        A, B, n, cnt = self.A, self.B, self.n, self.counter
        k = Uwy.k
        if k == 0:
            return
        q = j + 1 - k
        p = j + 1
        m = n - p
        st = self.struct
        U1 = Uwy.V[:k, :]
        U2 = np.array(Uwy.V[k:, :], order="F")
        S = Uwy.T

        # spike: columns q..p-1 of B become exactly upper triangular
        Bs = B[q:p, q:p]
        W = U1.T @ Bs + U2.T @ B[p:, q:p]
        Bs -= U1 @ (S.T @ W)
        B[p:, q:p] = 0.0
        B[q:p, q:p] = np.triu(Bs)
        st.set_triangular(q, p)
        cnt.add(2 * k * k * (n - q) + k * k * k + 2 * k * k * k)

        spacing = _spacing(self.config, k)
        wins = _left_windows(p, n, k, spacing) if m > k else []
        for a, e in wins:
            wy, R = qr_wy(U2[a - p:e - p, :], cnt)
            U2[a - p:e - p, :] = R
            c0 = st.first(a, p)
            self._left_transform(a, e, wy, c0, j)
            st.low[c0:] = np.maximum(st.low[c0:], e)
        kk = min(k, m)
        X = np.vstack((U1, U2[:kk, :]))
        r1 = p + kk
        Wb = B[q:r1, p:].T @ X
        B[q:r1, p:] -= X @ (S.T @ Wb.T)
        Wa = A[q:r1, j:].T @ X
        A[q:r1, j:] -= X @ (S.T @ Wa.T)
        cnt.add(4 * (n - p) * (k + kk) * k + (n - p) * k * k)
        cnt.add(4 * (n - j) * (k + kk) * k + (n - j) * k * k)
        if self.Q is not None:
            Qm = self.Q
            Wq = Qm[:, q:r1] @ X
            Qm[:, q:r1] -= (Wq @ S) @ X.T
            cnt.add(4 * n * (k + kk) * k + n * k * k)
        if kk:
            st.low[p:] = np.maximum(st.low[p:], r1)

        if self.config.block_mode:
            targets = [p] + _grid(n, spacing, p)
        else:
            targets = sorted({p, n} | {a for a, _ in wins})
        self.left_restore(targets, j)


def absorb_right(A, B, Z, Vwy, Y, config, j, structure=None, counter=None):
    """Absorb the right reflectors of a panel whose next column is j.

    Vwy lives in local rows q..n-1 with q = j + 1 - Vwy.k.  Returns the
    updated (A, B, Z); the spike columns q..j of B are left for
    `absorb_left`.
    """
    counter = FlopCounter() if counter is None else counter
    st = BStructure.from_matrix(B) if structure is None else structure
    _Absorber(A, B, None, Z, st, config, counter).absorb_right(Vwy, Y, j)
    return A, B, Z


def absorb_left(A, B, Q, Uwy, config, j, structure=None, counter=None):
    counter = FlopCounter() if counter is None else counter
    if structure is None:
        k = Uwy.k
        q = j + 1 - k
        masked = np.array(B)
        masked[j + 1:, q:j + 1] = 0.0
        structure = BStructure.from_matrix(masked)
    _Absorber(A, B, Q, None, structure, config, counter).absorb_left(Uwy, j)
    return A, B, Q


def _deblock(A, B, Q, Z, struct, counter):
    """Turn any remaining nontrivial diagonal blocks of B triangular."""
    n = B.shape[0]
    if structure_defect(B, "upper_triangular") == 0.0:
        return
    cfg = HtConfig(nb=1, ell=2)
    ab = _Absorber(A, B, Q, Z, struct, cfg, counter)
    ab.left_restore(struct.offsets(0), 0)
    if structure_defect(B, "upper_triangular") != 0.0:
        raise NumericalFailure("could not restore triangular B")


def house_ht(A, B, config=None, counter=None):
    config = HtConfig() if config is None else config
    A, B = _check_pencil(A, B)
    n = A.shape[0]
    counter = FlopCounter() if counter is None else counter
    start_flops = counter.total
    Q = np.eye(n, order="F")
    Z = np.eye(n, order="F")
    report = ReductionReport()
    if n < 3:
        return A, B, Q, Z, report
    A0, B0 = (A.copy(), B.copy()) if config.debug else (None, None)
    rng = np.random.default_rng(config.seed)
    struct = BStructure.triangular(n)
    Bt = BlockTriangularB(B, check=False)
    ab = _Absorber(A, B, Q, Z, struct, config, counter)
    nb = config.nb

    def absorb(state, premature):
        J = state.j
        ab.absorb_right(state.Vwy, state.Y, J)
        ab.absorb_left(state.Uwy, J)
        report.absorptions += 1
        report.premature_absorptions += int(premature)
        report.events.append(("absorb", J, state.k, premature))
        if config.debug:
            _debug_check(A0, B0, A, B, Q, Z, struct, J)

    state = None
    j = 0
    while j < n - 2:
        if state is None or state.k == 0:
            q = j + 1
            Bt.set_offsets(struct.offsets(0), check=config.debug)
            Bt.bnorm = frob_norm(B)
            _, count = desingularize_diagonal(Bt, rng, start=q)
            report.replacements += count
            state = PanelState.start(n, j, nb, 2.0 * U * Bt.bnorm)
        state.saved = A[:, j].copy()
        panel_update_column(state, A, counter)
        k_before = state.k
        status = panel_reduce_column(state, A, Bt, config.max_ir, counter)
        steps = state.outcome.ir_steps
        report.ir_steps_total += steps
        report.ir_extra_columns += int(steps > 0)
        if status == "ok":
            report.events.append(("column", j, k_before, steps))
            j += 1
            if state.k == nb or j == n - 2:
                absorb(state, False)
                state.k = 0
        else:
            if k_before == 0:
                raise NumericalFailure("solve failed for the first column of a panel")
            report.ir_failed_columns += 1
            report.events.append(("failed", j, k_before, steps))
            absorb(state, True)
            state.k = 0
    _deblock(A, B, Q, Z, struct, counter)
    report.flops = counter.total - start_flops
    return A, B, Q, Z, report


def _debug_check(A0, B0, A, B, Q, Z, struct, J):
    n = A.shape[0]
    tol = 100 * n * U
    ra = frob_norm(Q.T @ A0 @ Z - A) / max(frob_norm(A0), 1e-300)
    rb = frob_norm(Q.T @ B0 @ Z - B) / max(frob_norm(B0), 1e-300)
    if ra > tol or rb > tol:
        raise NumericalFailure(f"equivalence lost at column {J}: {ra:.2e} {rb:.2e}")
    if np.any(np.tril(A[:, :J], -2)):
        raise NumericalFailure(f"A lost Hessenberg form before column {J}")
    if np.any(np.tril(B[:, :J + 1], -1)):
        raise NumericalFailure(f"B lost triangular form before column {J + 1}")
    struct.check(B)
