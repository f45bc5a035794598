"""Command-line front end: ``solve``, ``gen``, ``verify`` and ``bench``."""
from __future__ import annotations

import argparse
import json
import sys

from . import bench as _bench
from .generate import KINDS, generate
from .oracle import Instance, InstanceFormatError, InstanceMismatchError, OracleModeError
from .solvers import ALGOS, RANK_ALGOS, run_algo
from .verify import MAX_ORACLE_N, reference_solver, union_rank_oracle, validate_partition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MODE = 0, 1, 2, 3


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def _load(path):
    try:
        return Instance.load(path)
    except OSError as exc:
        _err(f"cannot read {path}: {exc}")
    except (InstanceFormatError, InstanceMismatchError) as exc:
        _err(f"malformed instance: {exc}")
    return None


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    if inst is None:
        return EXIT_USAGE
    if args.oracle == "independence":
        if args.algo in RANK_ALGOS:
            _err(f"{args.algo} needs rank queries but the run is independence-only")
            return EXIT_MODE
        inst.set_independence_only()
    if args.eps is not None and not 0 < args.eps <= 1:
        _err("--eps must lie in (0, 1]")
        return EXIT_USAGE
    try:
        rep = run_algo(inst, args.algo, eps=args.eps, d=args.d)
    except OracleModeError as exc:
        _err(str(exc))
        return EXIT_MODE
    if args.json:
        print(json.dumps(rep.to_dict()))
    else:
        s = rep.stats
        print(f"p = {rep.p}")
        for i, part in enumerate(rep.state.as_lists()):
            print(f"S_{i + 1} = {part}")
        print(f"independence queries = {s.independence_queries}")
        print(f"rank queries = {s.rank_queries}")
        print(f"phases = {s.phases}, augmentations = {s.augmentations}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n < 1 or args.k < 1:
        _err("--n and --k must be positive")
        return EXIT_USAGE
    text = generate(args.kind, args.n, args.k, args.seed).dumps()
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return EXIT_USAGE
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    if inst is None:
        return EXIT_USAGE
    if inst.n > MAX_ORACLE_N:
        _err(f"n={inst.n} is too large for exhaustive verification (limit {MAX_ORACLE_N})")
        return EXIT_USAGE
    verdict = union_rank_oracle(inst)
    ref = reference_solver(inst.copy())
    got = run_algo(inst.copy(), args.algo)
    checks = {
        f"{args.algo} p": got.p,
        "reference p": ref.p,
        "oracle p": verdict.p_true,
    }
    if args.expect_p is not None:
        checks["expected p"] = args.expect_p
    ok = len(set(checks.values())) == 1
    valid = validate_partition(inst, got.state) and validate_partition(inst, ref.state)
    for name, val in checks.items():
        print(f"{name} = {val}")
    print(f"partitions valid = {valid}")
    if ok and valid:
        print("OK")
        return EXIT_OK
    print(f"MISMATCH; witness T = {list(verdict.witness_T)}")
    return EXIT_FAIL


def _csv_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def cmd_bench(args) -> int:
    kinds = _csv_list(args.kinds)
    bad = [k for k in kinds if k not in KINDS]
    algos = _csv_list(args.algos)
    bad += [a for a in algos if a not in ALGOS]
    try:
        n_grid = [int(x) for x in _csv_list(args.n_grid)]
        k_grid = _csv_list(args.k_grid)
        for n in n_grid:
            for kt in k_grid:
                if n < 1 or _bench.parse_k(kt, n) < 1:
                    raise ValueError("sizes must be positive")
    except ValueError as exc:
        _err(f"bad grid: {exc}")
        return EXIT_USAGE
    if bad or args.reps < 0:
        _err(f"bad arguments: {bad or 'reps must be >= 0'}")
        return EXIT_USAGE
    try:
        fh = open(args.out, "w")
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return EXIT_USAGE
    fh.close()
    rows = _bench.run_bench(kinds, n_grid, k_grid, args.reps, args.seed, algos)
    _bench.write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matroid-union", description="Matroid partition with counted oracle queries.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--algo", choices=ALGOS, default="combined")
    p.add_argument("--eps", type=float, help="fixed-phase approximation (blockflow-ind / blockflow-rank)")
    p.add_argument("--d", type=int, help="override the combined solver's switch distance")
    p.add_argument("--oracle", choices=("full", "independence"), default="full",
                   help="'independence' forbids rank queries")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="cross-check a solver against brute force")
    p.add_argument("--instance", required=True)
    p.add_argument("--algo", choices=ALGOS[1:], default="combined")
    p.add_argument("--expect-p", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="query-count matrix as CSV")
    p.add_argument("--kinds", default="graphic,partition")
    p.add_argument("--n-grid", default="16,32")
    p.add_argument("--k-grid", default="2,n")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algos", default=",".join(_bench.DEFAULT_ALGOS))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
