"""Command-line entry point: generate, reduce, verify, bench.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 numerical failure.
"""
import argparse
import json
import sys

from .bench import ALGOS, reduce_pencil, run_suite
from .errors import (ContractViolation, NumericalFailure, ParseError,
                     SingularSystemError, UnsupportedFormatError)
from .generators import gen_random_pencil, gen_saddlepoint
from .mmio import mm_read, mm_write
from .report import HtConfig
from .verify import verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
GENERATORS = {"random": gen_random_pencil, "saddlepoint": gen_saddlepoint}


def _config(args):
    seed = args.seed[0] if isinstance(args.seed, list) else args.seed
    return HtConfig(nb=args.nb, ell=args.ell, seed=seed, accelerated=not args.no_accel)


def _add_config(p):
    p.add_argument("--nb", type=int, default=32, help="panel width")
    p.add_argument("--ell", type=int, default=4, help="absorption block factor")
    p.add_argument("--no-accel", action="store_true",
                   help="plain triangular B between panels")
    p.add_argument("--preprocess", action="store_true",
                   help="deflate zero columns of B first")


def _load_pencil(args):
    if args.a or args.b:
        if not (args.a and args.b):
            raise ContractViolation("--a and --b must be given together")
        return mm_read(args.a), mm_read(args.b)
    if args.n is None:
        raise ContractViolation("need either --a/--b or --n")
    return GENERATORS[args.kind](args.n, args.seed)


def _print_json(obj):
    json.dump(obj, sys.stdout, indent=2, default=float)
    sys.stdout.write("\n")


def cmd_generate(args):
    if args.n is None:
        raise ContractViolation("--n is required")
    A, B = GENERATORS[args.kind](args.n, args.seed)
    mm_write(f"{args.out_prefix}_A.mtx", A, comment=f"{args.kind} n={args.n} seed={args.seed}")
    mm_write(f"{args.out_prefix}_B.mtx", B, comment=f"{args.kind} n={args.n} seed={args.seed}")
    print(f"wrote {args.out_prefix}_A.mtx {args.out_prefix}_B.mtx")
    return EXIT_OK


def cmd_reduce(args):
    A, B = _load_pencil(args)
    H, T, Q, Z, rep = reduce_pencil(A, B, args.algo, _config(args), args.preprocess)
    res = verify(A, B, H, T, Q, Z, seed=args.seed)
    rep.residual_a, rep.residual_b = res.residual_a, res.residual_b
    rep.orth_q, rep.orth_z = res.orth_q, res.orth_z
    if args.out_prefix:
        for name, M in zip("HTQZ", (H, T, Q, Z)):
            mm_write(f"{args.out_prefix}_{name}.mtx", M)
    _print_json({"algo": args.algo, "n": A.shape[0], "report": rep.as_dict(),
                 "pass": res.passed})
    return EXIT_OK if res.passed else EXIT_VERIFY


def cmd_verify(args):
    if not (args.a and args.b and args.out_prefix):
        raise ContractViolation("verify needs --a, --b and --out-prefix")
    A, B = mm_read(args.a), mm_read(args.b)
    H, T, Q, Z = (mm_read(f"{args.out_prefix}_{name}.mtx") for name in "HTQZ")
    res = verify(A, B, H, T, Q, Z, seed=args.seed)
    _print_json(res.as_dict())
    return EXIT_OK if res.passed else EXIT_VERIFY


def cmd_bench(args):
    files = []
    if args.a or args.b:
        if len(args.a or []) != len(args.b or []):
            raise ContractViolation("--a and --b must be given in pairs")
        files = list(zip(args.a, args.b))
        suite = "files"
    else:
        suite = args.kind
        if not args.n:
            raise ContractViolation("--n is required")
    rows, ok = run_suite(suite, args.n or (), _config(args), args.csv, args.json,
                         algos=args.algo, preprocess=args.preprocess,
                         seeds=args.seed, files=files)
    for r in rows:
        print(f"n={r['n']:<6} {r['algo']:<8} flops={r['flops']:<14} "
              f"extra={r['ir_extra_pct']:6.2f}% failed={r['ir_failed_pct']:5.2f}% "
              f"res_a={r['residual_a']:.2e} {'pass' if r['pass'] else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="househt",
                                     description="Hessenberg-triangular reduction of A - lambda B")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("generate", help="write a test pencil in Matrix Market format")
    p.add_argument("--kind", choices=sorted(GENERATORS), default="random")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="reduce one pencil and verify the result")
    p.add_argument("--kind", choices=sorted(GENERATORS), default="random")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--algo", choices=ALGOS, default="blocked")
    p.add_argument("--out-prefix")
    _add_config(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check H, T, Q, Z files against A, B")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--out-prefix")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a suite and write CSV/JSON")
    p.add_argument("--kind", choices=sorted(GENERATORS), default="random")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--seed", type=int, nargs="+", default=[0])
    p.add_argument("--a", nargs="+")
    p.add_argument("--b", nargs="+")
    p.add_argument("--algo", choices=ALGOS, nargs="+", default=["blocked"])
    p.add_argument("--csv")
    p.add_argument("--json")
    _add_config(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsupportedFormatError, ContractViolation) as exc:
        print(f"househt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, SingularSystemError) as exc:
        print(f"househt: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"househt: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
