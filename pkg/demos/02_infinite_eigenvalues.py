"""Saddle-point pencils, infinite eigenvalues and iterative refinement.

B = diag(I, 0) is singular, so a quarter of the eigenvalues are infinite.
Each column of the blocked reduction solves a system with a transformed
B; with many tiny pivots those solves need refinement, and sometimes
refinement gives up and the panel is absorbed early.  Deflating the zero
columns of B first removes most of that trouble.

Run with:  python3 demos/02_infinite_eigenvalues.py
"""
from househt import gen_saddlepoint, reduce_pencil, verify

print(f"{'n':>5} {'deflate':>8} {'refined cols':>13} {'gave up':>8} {'IR steps':>9} {'verified':>9}")
for n in (100, 200, 400):
    A, B = gen_saddlepoint(n, seed=0)
    for pre in (False, True):
        H, T, Q, Z, rep = reduce_pencil(A, B, "blocked", preprocess=pre)
        ok = verify(A, B, H, T, Q, Z).passed
        print(f"{n:5d} {'yes' if pre else 'no':>8} {rep.ir_extra_columns / n:12.1%} "
              f"{rep.ir_failed_columns:8d} {rep.ir_steps_total:9d} {str(ok):>9}")

# Either way the result is a valid Hessenberg-triangular form: a failed
# solve never corrupts the output, it only costs an early absorption.
