"""Unblocked reduction: one left reflector and one opposite right reflector
per column, applied immediately to the whole pencil.

The left reflector fills the trailing block of B, so each right
reflector comes from a dense solve of B[j+1:, j+1:] x = e1 by LU with
partial pivoting.  Tiny pivots are replaced as in the triangular case.
"""
import numpy as np

from .errors import ContractViolation
from .matrix import FlopCounter, as_fortran, structure_defect
from .pencil_solve import BlockTriangularB, block_back_substitute, desingularize_diagonal
from .reflectors import apply_reflector, house
from .report import ReductionReport


def _check_pencil(A, B):
    A, B = as_fortran(A), as_fortran(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ContractViolation("A and B must be square of the same size")
    if A.shape[0] < 1:
        raise ContractViolation("empty pencil")
    if structure_defect(B, "upper_triangular") != 0.0:
        raise ContractViolation("B must be upper triangular")
    return A, B


def reduce_basic(A, B, seed=0, counter=None):
    A, B = _check_pencil(A, B)
    n = A.shape[0]
    counter = FlopCounter() if counter is None else counter
    start_flops = counter.total
    Q = np.eye(n, order="F")
    Z = np.eye(n, order="F")
    report = ReductionReport()
    rng = np.random.default_rng(seed)
    Bt = BlockTriangularB(B, check=False)
    for j in range(n - 2):
        f = house(A[j + 1:, j])
        apply_reflector(A[j + 1:, j:], f, "left", counter)
        apply_reflector(B[j + 1:, j + 1:], f, "left", counter)
        apply_reflector(Q[:, j + 1:], f, "right", counter)
        A[j + 2:, j] = 0.0

        Bt.set_offsets(list(range(j + 2)) + [n], check=False)
        _, count = desingularize_diagonal(Bt, rng, start=j + 1)
        report.replacements += count
        rhs = np.zeros(n - j - 1)
        rhs[0] = 1.0
        x = block_back_substitute(Bt, rhs, j + 1, counter)

        g = house(x)
        apply_reflector(A[:, j + 1:], g, "right", counter)
        apply_reflector(B[:, j + 1:], g, "right", counter)
        apply_reflector(Z[:, j + 1:], g, "right", counter)
        B[j + 2:, j + 1] = 0.0
    report.flops = counter.total - start_flops
    return A, B, Q, Z, report
