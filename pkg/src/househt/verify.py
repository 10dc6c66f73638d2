"""Backward-error, orthogonality and structure checks for an HT result."""
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ContractViolation
from .factorizations import lu_pp
from .matrix import U, as_array, frob_norm, structure_defect

DET_SAMPLES = 5
DET_MAX_N = 64
DET_RTOL = 1e-8


@dataclass
class VerificationResult:
    residual_a: float
    residual_b: float
    orth_q: float
    orth_z: float
    hessenberg_defect: float
    triangular_defect: float
    thresholds: dict
    passed: bool
    # largest relative gap between |det(A - lam B)| and |det(H - lam T)|;
    # None when n is too large for sampling
    det_rel_error: float = None
    det_lambdas: list = field(default_factory=list)

    def as_dict(self):
        return asdict(self)


def _det_gap(A, B, H, T, lambdas):
    worst = 0.0
    for lam in lambdas:
        la = lu_pp(A - lam * B).logabsdet()
        lh = lu_pp(H - lam * T).logabsdet()
        if np.isneginf(la) and np.isneginf(lh):
            continue
        if np.isneginf(la) or np.isneginf(lh):
            return float("inf")
        worst = max(worst, abs(np.expm1(lh - la)))
    return float(worst)


def verify(A, B, H, T, Q, Z, seed=0, factor=100.0):
    A, B, H, T, Q, Z = (as_array(M) for M in (A, B, H, T, Q, Z))
    n = A.shape[0]
    if any(M.shape != (n, n) for M in (A, B, H, T, Q, Z)):
        raise ContractViolation("all six matrices must be n x n")
    tol = factor * n * U
    I = np.eye(n)
    res_a = frob_norm(A - Q @ H @ Z.T)
    res_b = frob_norm(B - Q @ T @ Z.T)
    oq = frob_norm(Q.T @ Q - I)
    oz = frob_norm(Z.T @ Z - I)
    hd = structure_defect(H, "hessenberg")
    td = structure_defect(T, "upper_triangular")
    thresholds = {
        "residual_a": tol * frob_norm(A),
        "residual_b": tol * frob_norm(B),
        "orth_q": tol,
        "orth_z": tol,
    }
    values = {"residual_a": res_a, "residual_b": res_b, "orth_q": oq, "orth_z": oz}
    ok = hd == 0.0 and td == 0.0 and all(
        np.isfinite(values[k]) and values[k] <= thresholds[k] for k in values)

    det_err, lambdas = None, []
    if n <= DET_MAX_N:
        lambdas = [float(x) for x in np.random.default_rng(seed).standard_normal(DET_SAMPLES)]
        det_err = _det_gap(A, B, H, T, lambdas)
    return VerificationResult(res_a, res_b, oq, oz, hd, td, thresholds, bool(ok),
                              det_err, lambdas)
