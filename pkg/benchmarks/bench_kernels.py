"""Compiled vs pure-Python kernels: per-call timings and one end-to-end solve.

    python3 benchmarks/bench_kernels.py [--calls N] [--n N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from array import array

from matroid_union import kernels

SOLVE = """
import time
from matroid_union import BACKEND, generate
from matroid_union.solvers import run_algo
inst = generate("{kind}", {n}, {k}, 0)
t0 = time.perf_counter()
rep = run_algo(inst, "combined")
print("{kind:<8} {n:>4} {k:>4}", BACKEND.ljust(9), rep.p, rep.stats.independence_queries,
      round(time.perf_counter() - t0, 3))
"""


def kernel_cases(n, rng):
    elems = rng.sample(range(n), n // 2)
    nv = max(2, n // 4)
    tail = array("i", [rng.randrange(nv) for _ in range(n)])
    head = array("i", [rng.randrange(nv) for _ in range(n)])
    words = (n // 2 + 63) // 64
    cols = array("Q", [rng.getrandbits(64) for _ in range(n * words)])
    block_of = array("i", [rng.randrange(8) for _ in range(n)])
    caps = array("i", [n // 16 + 1] * 8)
    return {
        "count_valid": lambda k: k.count_valid(elems, n),
        "forest_rank": lambda k: k.forest_rank(elems, tail, head, array("i", range(nv)), False),
        "gf2_rank": lambda k: k.gf2_rank(elems, cols, words, False),
        "partition_rank": lambda k: k.partition_rank(elems, block_of, caps, array("i", [0] * 8), False),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--calls", type=int, default=2000)
    ap.add_argument("--n", type=int, default=128)
    args = ap.parse_args()

    if kernels.BACKEND != "compiled":
        print("extension not built; only the pure kernels are available", file=sys.stderr)
    print(f"per-call time, n={args.n}, {args.calls} calls")
    print(f"{'kernel':<16}{'compiled us':>12}{'pure us':>12}{'speedup':>10}")
    for name, call in kernel_cases(args.n, random.Random(0)).items():
        pure = timeit.timeit(lambda: call(kernels.pure), number=args.calls) / args.calls * 1e6
        comp = timeit.timeit(lambda: call(kernels), number=args.calls) / args.calls * 1e6
        print(f"{name:<16}{comp:>12.2f}{pure:>12.2f}{pure / comp:>10.1f}")

    # k = n keeps parts tiny, so queries are cheap either way; small k and
    # binary columns are where the kernels carry the run time
    print("\nend-to-end combined solve")
    print("kind        n    k backend   p ind_queries seconds")
    for kind, k in (("graphic", args.n), ("graphic", 4), ("binary", 4)):
        for pure_flag in ("0", "1"):
            env = dict(os.environ, MATROID_UNION_PURE=pure_flag)
            out = subprocess.run([sys.executable, "-c", SOLVE.format(kind=kind, n=args.n, k=k)], env=env,
                                 capture_output=True, text=True, check=True)
            print(out.stdout.strip())


if __name__ == "__main__":
    main()
