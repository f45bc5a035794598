"""Matroid partition under rank oracles.

The search runs backwards: distances are measured to the sinks, and paths are
grown from a sink towards ``s``.  Only rank queries are issued.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import exchange
from .algos_ind import Observer, _finish, phases_for_eps
from .exchange import INF, AugmentingPath, PartitionState, update_partition
from .report import AugmentEvent, PhaseRecord, PhaseResult, SolveReport


@dataclass
class ReverseDistanceLabels:
    d: list  # distance from each element to the sink set
    d_s: float


def get_distance_rank(instance, state: PartitionState) -> ReverseDistanceLabels:
    """Reverse BFS over one shared pool of unlabeled elements."""
    n, k = instance.n, instance.k
    ms, parts, owner = instance.matroids, state.parts, state.owner
    d = [INF] * n
    pool = set(range(n))
    queue = deque()
    for i in range(k):
        while True:
            v = exchange.find_in_edge(ms[i], parts[i], None, pool - parts[i])
            if v is None:
                break
            d[v] = 1
            pool.discard(v)
            queue.append(v)
    d_s = INF
    while queue:
        u = queue.popleft()
        i = owner[u]
        if i < 0:
            if d_s == INF:
                d_s = d[u] + 1
            continue
        while True:
            v = exchange.find_in_edge(ms[i], parts[i], u, pool - parts[i])
            if v is None:
                break
            d[v] = d[u] + 1
            pool.discard(v)
            queue.append(v)
    return ReverseDistanceLabels(d, d_s)


def block_flow_rank(instance, state: PartitionState, on_augment: Observer = None) -> PhaseResult:
    """One reverse blocking-flow phase.

    Layer ``d_s - 1`` keeps only elements outside ``S``, the ones adjacent to
    ``s``; every other layer holds elements of ``S`` by distance.
    """
    labels = get_distance_rank(instance, state)
    ds = labels.d_s
    if ds == INF:
        return PhaseResult(state, False, INF, 0)
    ds = int(ds)
    k, ms = instance.k, instance.matroids
    layers = [set() for _ in range(ds)]
    for v, dv in enumerate(labels.d):
        if dv < ds - 1 or (dv == ds - 1 and state.owner[v] < 0):
            layers[dv].add(v)
    live = set(range(k))
    aug = 0
    while live and all(layers[1:]):
        a = [None] * ds  # a[0] is the sink index
        l = 0
        while 0 <= l < ds - 1:
            if l == 0:
                if not live:
                    break
                i = a[0] = min(live)
                nxt = exchange.find_in_edge(ms[i], state.parts[i], None, layers[1] - state.parts[i])
            else:
                u = a[l]
                i = state.owner[u]
                nxt = exchange.find_in_edge(ms[i], state.parts[i], u, layers[l + 1] - state.parts[i])
            if nxt is not None:
                l += 1
                a[l] = nxt
            elif l == 0:
                live.discard(a[0])
            else:
                layers[l].discard(a[l])
                if not layers[l]:
                    l = -1
                else:
                    l -= 1
        if l != ds - 1:
            break
        path = AugmentingPath(tuple(reversed(a[1:])), a[0])
        new = update_partition(state, path)
        if on_augment:
            on_augment(AugmentEvent(state, path, new))
        state = new
        aug += 1
        for i in range(1, ds):
            layers[i].discard(a[i])
    return PhaseResult(state, aug > 0, ds, aug)


def solve_rank(instance, on_augment: Observer = None, max_phases: Optional[int] = None) -> SolveReport:
    """Reverse blocking-flow phases from the empty partition until no path is left."""
    start = instance.stats()
    state = PartitionState.empty(instance.n, instance.k)
    log = []
    phases = augs = 0
    while max_phases is None or phases < max_phases:
        before = instance.stats()
        res = block_flow_rank(instance, state, on_augment)
        dist = None if res.distance == INF else int(res.distance)
        log.append(PhaseRecord("blockflow-rank" if res.progressed else "final-search", dist,
                               res.augmentations, (instance.stats() - before).total))
        if not res.progressed:
            break
        state = res.state
        phases += 1
        augs += res.augmentations
    return SolveReport("blockflow-rank", state, _finish(instance.stats() - start, phases, augs), log)


def solve_rank_approx(instance, eps: float, on_augment: Observer = None) -> SolveReport:
    rep = solve_rank(instance, on_augment, max_phases=phases_for_eps(eps))
    rep.algo = "approx-rank"
    rep.extra["eps"] = eps
    return rep
