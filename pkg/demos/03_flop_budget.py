"""What the Householder route costs in flops, relative to Givens.

The blocked algorithm does roughly twice the arithmetic of the classic
rotation-based reduction, but almost all of it is matrix-matrix work.
This demo counts flops for a few sizes and panel widths.

Run with:  python3 demos/03_flop_budget.py
"""
from househt import FlopCounter, HtConfig, gen_random_pencil, house_ht, reduce_givens

for n in (100, 200, 400):
    A, B = gen_random_pencil(n, seed=0)
    g = FlopCounter()
    reduce_givens(A.copy(order="F"), B.copy(order="F"), counter=g)
    line = [f"n={n:<4} givens {g.total / n ** 3:5.1f} n^3"]
    for nb in (8, 16, 32):
        h = FlopCounter()
        house_ht(A, B, HtConfig(nb=nb, ell=4), counter=h)
        line.append(f"nb={nb:<2} x{h.total / g.total:4.2f}")
    print("   ".join(line))
