"""Ground truth for tests and the ``verify`` command.

Nothing here touches the counters of the instance under test.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exchange import (
    PartitionState,
    build_reference_graph,
    reference_shortest_path,
    update_partition,
)
from .report import AugmentEvent, SolveReport

MAX_ORACLE_N = 20


class OracleTooLarge(ValueError):
    pass


class OracleVerdict(NamedTuple):
    p_true: int
    witness_T: tuple  # a set T attaining the minimum


def union_rank_oracle(instance, max_n: int = MAX_ORACLE_N) -> OracleVerdict:
    """``min over T of sum_i rank_i(T) + |V - T|`` by enumerating every ``T``."""
    n = instance.n
    if n > max_n:
        raise OracleTooLarge(f"n={n} exceeds the exhaustive limit {max_n}")
    masks = np.arange(1 << n, dtype=np.int64)
    outside = np.full(1 << n, n, dtype=np.int64)
    for b in range(n):
        outside -= (masks >> b) & 1
    total = outside
    for m in instance.matroids:
        base = getattr(m, "base", m)
        total = total + base.subset_ranks()
    best = int(np.argmin(total))
    return OracleVerdict(int(total[best]), tuple(v for v in range(n) if best >> v & 1))


def validate_partition(instance, state: PartitionState) -> bool:
    """Parts disjoint, owners consistent, and each part independent."""
    n = instance.n
    if len(state.owner) != n or len(state.parts) != instance.k:
        return False
    seen = set()
    for i, part in enumerate(state.parts):
        for v in part:
            if not (isinstance(v, int) and 0 <= v < n) or v in seen or state.owner[v] != i:
                return False
            seen.add(v)
    if sum(o >= 0 for o in state.owner) != len(seen):
        return False
    view = instance.uncounted()
    return all(m.is_independent(sorted(p)) for m, p in zip(view.matroids, state.parts))


def reference_solver(instance, on_augment=None) -> SolveReport:
    """Rebuild the whole exchange graph and take one shortest path, until none."""
    start = instance.stats()
    state = PartitionState.empty(instance.n, instance.k)
    augs = 0
    while True:
        graph = build_reference_graph(instance, state)
        path = reference_shortest_path(state, graph)
        if path is None:
            break
        new = update_partition(state, path)
        if on_augment:
            on_augment(AugmentEvent(state, path, new))
        state = new
        augs += 1
    stats = instance.stats() - start
    stats = type(stats)(stats.independence_queries, stats.rank_queries, stats.per_matroid_independence,
                        stats.per_matroid_rank, 0, augs)
    return SolveReport("reference", state, stats)
