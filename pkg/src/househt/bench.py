"""Suite runner: reduce, verify and tabulate.

One CSV row per (instance, algorithm); the JSON file mirrors the rows.
"""
import csv
import json
import time
from functools import partial

from .errors import ContractViolation
from .generators import gen_random_pencil, gen_saddlepoint
from .givens import reduce_givens
from .ht_basic import reduce_basic
from .ht_blocked import house_ht
from .matrix import FlopCounter
from .mmio import mm_read
from .preprocess import reduce_with_preprocessing
from .report import HtConfig
from .verify import verify

ALGOS = ("basic", "blocked", "givens")
SUITES = ("random", "saddlepoint", "files")
COLUMNS = ("n", "algo", "nb", "ell", "preprocess", "flops", "ir_extra_pct",
           "ir_failed_pct", "ir_avg_steps", "absorptions",
           "premature_absorptions", "residual_a", "residual_b", "orth_q",
           "orth_z", "wall_ms")


def reduce_pencil(A, B, algo="blocked", config=None, preprocess=False):
    """Run one reduction; returns (H, T, Q, Z, report)."""
    config = HtConfig() if config is None else config
    counter = FlopCounter()
    if algo == "basic":
        reducer = partial(reduce_basic, seed=config.seed, counter=counter)
    elif algo == "blocked":
        reducer = partial(house_ht, config=config, counter=counter)
    elif algo == "givens":
        reducer = partial(reduce_givens, counter=counter)
    else:
        raise ContractViolation(f"unknown algorithm {algo!r}")
    if preprocess:
        H, T, Q, Z, report, _ = reduce_with_preprocessing(A, B, reducer)
    else:
        H, T, Q, Z, report = reducer(A.copy(order="F"), B.copy(order="F"))
    report.flops = counter.total
    return H, T, Q, Z, report


def _instances(suite, sizes, seeds, files):
    if suite == "files":
        for a_path, b_path in files:
            yield mm_read(a_path), mm_read(b_path)
        return
    gen = {"random": gen_random_pencil, "saddlepoint": gen_saddlepoint}.get(suite)
    if gen is None:
        raise ContractViolation(f"unknown suite {suite!r}")
    for n in sizes:
        for seed in seeds:
            yield gen(n, seed)


def bench_row(A, B, algo, config, preprocess):
    t0 = time.perf_counter()
    H, T, Q, Z, rep = reduce_pencil(A, B, algo, config, preprocess)
    wall = 1000.0 * (time.perf_counter() - t0)
    res = verify(A, B, H, T, Q, Z, seed=config.seed)
    rep.residual_a, rep.residual_b = res.residual_a, res.residual_b
    rep.orth_q, rep.orth_z = res.orth_q, res.orth_z
    n = A.shape[0]
    blocked = algo == "blocked"
    row = {
        "n": n,
        "algo": algo,
        "nb": config.nb if blocked else "",
        "ell": config.ell if blocked and config.accelerated else (2 if blocked else ""),
        "preprocess": int(bool(preprocess)),
        "flops": rep.flops,
        "ir_extra_pct": 100.0 * rep.ir_extra_columns / n,
        "ir_failed_pct": 100.0 * rep.ir_failed_columns / n,
        "ir_avg_steps": rep.ir_steps_total / max(n - 2, 1),
        "absorptions": rep.absorptions,
        "premature_absorptions": rep.premature_absorptions,
        "residual_a": res.residual_a,
        "residual_b": res.residual_b,
        "orth_q": res.orth_q,
        "orth_z": res.orth_z,
        "wall_ms": wall,
    }
    return row, res.passed


def run_suite(suite, sizes=(), config=None, csv_path=None, json_path=None,
              algos=("blocked",), preprocess=False, seeds=(0,), files=()):
    """Returns (rows, all_passed)."""
    config = HtConfig() if config is None else config
    for a in algos:
        if a not in ALGOS:
            raise ContractViolation(f"unknown algorithm {a!r}")
    rows, ok = [], True
    for A, B in _instances(suite, sizes, seeds, files):
        for algo in algos:
            row, passed = bench_row(A, B, algo, config, preprocess)
            row["pass"] = int(passed)
            rows.append(row)
            ok &= passed
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(COLUMNS), extrasaction="ignore")
            w.writeheader()
            w.writerows(rows)
    if json_path:
        with open(json_path, "w") as fh:
            json.dump({"suite": suite, "passed": ok, "rows": rows}, fh, indent=2)
    return rows, ok
