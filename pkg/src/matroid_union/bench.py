"""Query-count benchmark matrix with CSV output."""
from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

from .generate import generate
from .solvers import run_algo

DEFAULT_ALGOS = ("blockflow-ind", "blockflow-enum", "blockflow-rank", "edge-recycle", "combined")


@dataclass
class BenchRow:
    instance_id: str
    seed: int
    n: int
    k: int
    kind: str
    algo: str
    p: int
    ind_queries: int
    rank_queries: int
    phases: int
    augmentations: int
    wall_ms: float


HEADER = [f.name for f in fields(BenchRow)]


def parse_k(token: str, n: int) -> int:
    """``"n"`` in a k-grid means k equal to the current n."""
    return n if token.strip() == "n" else int(token)


def plan(kinds, n_grid, k_grid, reps: int, seed: int):
    """Deterministic list of ``(instance_id, seed, kind, n, k)`` jobs."""
    jobs = []
    for kind in kinds:
        for n in n_grid:
            for kt in k_grid:
                k = parse_k(str(kt), n)
                for rep in range(reps):
                    inst_seed = seed * 1_000_003 + len(jobs)
                    jobs.append((f"{kind}-n{n}-k{k}-r{rep}", inst_seed, kind, n, k))
    return jobs


def run_job(job, algos=DEFAULT_ALGOS):
    instance_id, inst_seed, kind, n, k = job
    base = generate(kind, n, k, inst_seed)
    rows = []
    for algo in algos:
        inst = base.copy()
        t0 = time.perf_counter()
        rep = run_algo(inst, algo)
        ms = (time.perf_counter() - t0) * 1000.0
        s = rep.stats
        rows.append(BenchRow(instance_id, inst_seed, n, k, kind, algo, rep.p, s.independence_queries,
                             s.rank_queries, s.phases, s.augmentations, round(ms, 3)))
    return rows


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MATROID_UNION_THREADS", "1")))
    except ValueError:
        return 1


def run_bench(kinds, n_grid, k_grid, reps: int, seed: int, algos=DEFAULT_ALGOS, workers=None) -> list:
    jobs = plan(kinds, n_grid, k_grid, reps, seed)
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            chunks = list(ex.map(run_job, jobs, [tuple(algos)] * len(jobs)))
    else:
        chunks = [run_job(j, algos) for j in jobs]
    return [row for chunk in chunks for row in chunk]


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(HEADER)
        for r in rows:
            w.writerow(astuple(r))
