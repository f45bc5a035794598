"""Matroid partition under independence oracles.

Solvers here never issue rank queries.  Every ``solve_*`` function starts from
the empty partition and returns a :class:`~matroid_union.report.SolveReport`
whose stats are the query delta of that run.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from . import exchange
from .exchange import INF, AugmentingPath, ExchangeEdgeSet, PartitionState, update_partition
from .report import AugmentEvent, PhaseRecord, PhaseResult, SolveReport

Observer = Optional[Callable[[AugmentEvent], None]]


@dataclass
class DistanceLabels:
    d: list
    d_sinks: list
    d_s: int = 0

    @property
    def d_T(self):
        return min(self.d_sinks, default=INF)


def _with(part, v):
    out = list(part)
    out.append(v)
    return out


def _swap(part, u, v):
    out = [x for x in part if x != u]
    out.append(v)
    return out


def greedy_half_approx(instance):
    """Fill ``S_1``, then ``S_2``, ... greedily; returns (state, p_bar) with p_bar <= p <= 2 p_bar."""
    state = PartitionState.empty(instance.n, instance.k)
    for i, m in enumerate(instance.matroids):
        part = state.parts[i]
        for v in range(instance.n):
            if state.owner[v] < 0 and m.is_independent(_with(part, v)):
                part.add(v)
                state.owner[v] = i
    return state, state.size


def get_distance_independence(instance, state: PartitionState) -> DistanceLabels:
    """BFS from ``s`` using one sink query per (element, unreached sink) and
    binary-search edge discovery against shrinking per-part pools.

    Labels are exact below ``d_T`` and for ``d_T`` itself.  Deeper labels may
    use swaps ``S_i + v - u`` where ``S_i + v`` was already independent, which
    are not exchange edges.
    """
    n, k = instance.n, instance.k
    ms, parts = instance.matroids, state.parts
    d = [INF] * n
    dt = [INF] * k
    queue = deque(state.outside())
    for v in queue:
        d[v] = 1
    pools = [set(p) for p in parts]
    while queue:
        v = queue.popleft()
        for i in range(k):
            if dt[i] == INF and v not in parts[i] and ms[i].is_independent(_with(parts[i], v)):
                dt[i] = d[v] + 1
        for i in range(k):
            if v in parts[i]:
                continue
            while True:
                u = exchange.find_out_edge(ms[i], parts[i], v, pools[i])
                if u is None:
                    break
                queue.append(u)
                d[u] = d[v] + 1
                pools[i].discard(u)
    return DistanceLabels(d, dt)


def _layers(d, top):
    layers = [set() for _ in range(top + 1)]
    for v, dv in enumerate(d):
        if dv <= top:
            layers[dv].add(v)
    return layers


def block_flow_independence(instance, state: PartitionState, on_augment: Observer = None) -> PhaseResult:
    """One blocking-flow phase: augment along shortest paths until none of the
    current length remains."""
    labels = get_distance_independence(instance, state)
    dT = labels.d_T
    if dT == INF:
        return PhaseResult(state, False, INF, 0)
    dT = int(dT)
    n, k, ms = instance.n, instance.k, instance.matroids
    layers = _layers(labels.d, dT - 1)
    next_idx = [0] * n  # I_v is {next_idx[v], ..., k-1}
    aug = 0
    while all(layers[i] for i in range(1, dT)):
        a = [None] * dT
        sink = None
        l = 0
        while l < dT:
            nxt = None
            if l == 0:
                nxt = min(layers[1])
            elif l < dT - 1:
                v = a[l]
                while next_idx[v] < k:
                    i = next_idx[v]
                    part = state.parts[i]
                    if v in part:
                        next_idx[v] += 1
                        continue
                    nxt = exchange.find_out_edge(ms[i], part, v, layers[l + 1] & part)
                    if nxt is None:
                        next_idx[v] += 1
                    else:
                        break
            else:
                v = a[l]
                for i in range(k):
                    part = state.parts[i]
                    if v not in part and ms[i].is_independent(_with(part, v)):
                        sink = nxt = i
                        break
            if nxt is None:
                layers[l].discard(a[l])
                if not layers[l]:
                    break
                l -= 1
            else:
                if l + 1 < dT:
                    a[l + 1] = nxt
                l += 1
        if sink is not None and l == dT:
            path = AugmentingPath(tuple(a[1:]), sink)
            new = update_partition(state, path)
            if on_augment:
                on_augment(AugmentEvent(state, path, new))
            state = new
            aug += 1
            for i in range(1, dT):
                layers[i].discard(a[i])
    return PhaseResult(state, aug > 0, dT, aug)


def build_sink_sets(instance, state: PartitionState) -> list:
    """``F_i = {v not in S_i : S_i + v independent}`` for every part; at most k*n queries."""
    return [refresh_sink_set(instance, state, i) for i in range(instance.k)]


def refresh_sink_set(instance, state: PartitionState, i: int) -> set:
    m, part = instance.matroids[i], state.parts[i]
    return {v for v in range(instance.n) if v not in part and m.is_independent(_with(part, v))}


class EnumPhaseResult(NamedTuple):
    state: PartitionState
    progressed: bool
    distance: float
    augmentations: int
    edge_queries: int


def block_flow_enumeration(instance, state: PartitionState, sinks: list, on_augment: Observer = None) -> EnumPhaseResult:
    """Blocking-flow phase that tests exchange pairs directly instead of by
    binary search.

    ``sinks`` must be current on entry and is kept current (only the sink
    part of each path needs a rebuild).  A (v, u, part) candidate found
    non-exchangeable is never retested within the phase.
    """
    n, k, ms = instance.n, instance.k, instance.matroids
    edge_q = 0
    rejected = set()
    known = {}  # (v, u) -> (part, version) when last seen exchangeable
    version = [0] * k

    # layered BFS; sink edges come from `sinks` for free
    union = set().union(*sinks) if sinks else set()
    d = [INF] * n
    level = state.outside()
    depth, dT = 1, INF
    while level:
        for v in level:
            d[v] = depth
        if any(v in union for v in level):
            dT = depth + 1
            break
        members = [sorted(p) for p in state.parts]
        nxt = []
        for v in level:
            for i in range(k):
                if v in state.parts[i] or v in sinks[i]:
                    continue
                for u in members[i]:
                    if d[u] != INF:
                        continue
                    edge_q += 1
                    if ms[i].is_independent(_swap(members[i], u, v)):
                        d[u] = depth + 1
                        nxt.append(u)
                        known[(v, u)] = (i, 0)
                    else:
                        rejected.add((v, u, i))
        level = nxt
        depth += 1
    if dT == INF:
        return EnumPhaseResult(state, False, INF, 0, edge_q)
    dT = int(dT)

    layers = _layers(d, dT - 1)
    next_idx = [0] * n

    def step(v, target_layer):
        nonlocal edge_q
        while next_idx[v] < k:
            i = next_idx[v]
            part = state.parts[i]
            if v in part or v in sinks[i]:
                next_idx[v] += 1
                continue
            for u in sorted(target_layer & part):
                if (v, u, i) in rejected:
                    continue
                if known.get((v, u)) == (i, version[i]):
                    return u
                edge_q += 1
                if ms[i].is_independent(_swap(part, u, v)):
                    known[(v, u)] = (i, version[i])
                    return u
                rejected.add((v, u, i))
            next_idx[v] += 1
        return None

    aug = 0
    while all(layers[i] for i in range(1, dT)):
        a = [None] * dT
        sink = None
        l = 0
        while l < dT:
            if l == 0:
                nxt = min(layers[1])
            elif l < dT - 1:
                nxt = step(a[l], layers[l + 1])
            else:
                nxt = next((i for i in range(k) if a[l] in sinks[i]), None)
                sink = nxt
            if nxt is None:
                layers[l].discard(a[l])
                if not layers[l]:
                    break
                l -= 1
            else:
                if l + 1 < dT:
                    a[l + 1] = nxt
                l += 1
        if sink is not None and l == dT:
            path = AugmentingPath(tuple(a[1:]), sink)
            new = update_partition(state, path)
            for x in path.interior[1:]:
                version[state.owner[x]] += 1
            version[sink] += 1
            if on_augment:
                on_augment(AugmentEvent(state, path, new))
            state = new
            sinks[sink] = refresh_sink_set(instance, state, sink)
            aug += 1
            for i in range(1, dT):
                layers[i].discard(a[i])
    return EnumPhaseResult(state, aug > 0, dT, aug, edge_q)


def ceil_log2(x: int) -> int:
    return (max(x, 1) - 1).bit_length()


def choose_variant(k: int, p_estimate: int) -> str:
    """Enumeration wins when k * log(p) per-phase work exceeds the p-sized term."""
    two_p = 2 * p_estimate
    return "enumeration" if k * ceil_log2(max(two_p, 2)) > two_p else "binary-search"


def combined_threshold(k: int, p_bar: int):
    """(k', d) with k' = min(k, 2 p_bar) and d the least integer >= p_bar / k'^(2/3)."""
    k_prime = min(k, 2 * p_bar)
    if k_prime == 0:
        return 0, 1
    d = max(1, math.ceil(p_bar / k_prime ** (2 / 3)) - 1)
    while d ** 3 * k_prime ** 2 < p_bar ** 3:
        d += 1
    return k_prime, d


def _run_phase(instance, state, variant, sinks, on_augment):
    if variant == "enumeration":
        res = block_flow_enumeration(instance, state, sinks, on_augment)
    else:
        res = block_flow_independence(instance, state, on_augment)
    return res


def solve_blockflow(instance, variant: str = "binary-search", on_augment: Observer = None,
                    max_phases: Optional[int] = None) -> SolveReport:
    """Repeat blocking-flow phases from the empty partition until no path is left."""
    if variant == "auto":
        variant = choose_variant(instance.k, instance.n // 2 if instance.n > 1 else 1)
    if variant not in ("binary-search", "enumeration"):
        raise ValueError(f"unknown blocking-flow variant {variant!r}")
    start = instance.stats()
    state = PartitionState.empty(instance.n, instance.k)
    log = []
    sinks = None
    if variant == "enumeration":
        before = instance.stats()
        sinks = build_sink_sets(instance, state)
        log.append(PhaseRecord("sinks", None, 0, (instance.stats() - before).total))
    phases = augs = 0
    while max_phases is None or phases < max_phases:
        before = instance.stats()
        res = _run_phase(instance, state, variant, sinks, on_augment)
        dist = None if res.distance == INF else int(res.distance)
        log.append(PhaseRecord(variant if res.progressed else "final-search", dist,
                               res.augmentations, (instance.stats() - before).total))
        if not res.progressed:
            break
        state = res.state
        phases += 1
        augs += res.augmentations
    stats = instance.stats() - start
    algo = "blockflow-enum" if variant == "enumeration" else "blockflow-ind"
    return SolveReport(algo, state, _finish(stats, phases, augs), log)


def _finish(stats, phases, augs):
    return type(stats)(stats.independence_queries, stats.rank_queries, stats.per_matroid_independence,
                       stats.per_matroid_rank, phases, augs)


def phases_for_eps(eps: float) -> int:
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return math.ceil(round(1 / eps, 9))


def solve_approx(instance, eps: float, on_augment: Observer = None) -> SolveReport:
    """Exactly ceil(1/eps) blocking-flow phases (fewer only if no path is left)."""
    rep = solve_blockflow(instance, "binary-search", on_augment, max_phases=phases_for_eps(eps))
    rep.algo = "approx-ind"
    rep.extra["eps"] = eps
    return rep


@dataclass
class RecycleState:
    estar: ExchangeEdgeSet
    J: set
    sinks: list
    total: int = 0  # the running `sum` of |J| over completed augmentations


def edge_recycling_bfs(instance, state: PartitionState, estar: ExchangeEdgeSet, J, sinks: list) -> Optional[AugmentingPath]:
    """BFS that searches parts in ``J`` by binary search and reads every other
    part's incoming edges from the stored ``estar``."""
    n = instance.n
    ms, parts, owner = instance.matroids, state.parts, state.owner
    union = set().union(*sinks) if sinks else set()
    dirty = sorted(J)
    parent = {}
    queue = deque(state.outside())
    pools = [set(p) for p in parts]
    while queue:
        v = queue.popleft()
        if v in union:
            chain = [v]
            while chain[-1] in parent:
                chain.append(parent[chain[-1]])
            j = next(i for i, F in enumerate(sinks) if v in F)
            return AugmentingPath(tuple(reversed(chain)), j)
        for i in dirty:
            if v in parts[i]:
                continue
            while True:
                u = exchange.find_out_edge(ms[i], parts[i], v, pools[i])
                if u is None:
                    break
                queue.append(u)
                pools[i].discard(u)
                parent[u] = v
        for u in estar.out_adj.get(v, ()):
            i = owner[u]
            if i < 0 or i in J or u not in pools[i]:
                continue
            queue.append(u)
            pools[i].discard(u)
            parent[u] = v
    return None


class RecycleResult(NamedTuple):
    state: PartitionState
    sinks: list
    augmentations: int
    exhausted: bool  # stopped because no augmenting path exists
    recycle: RecycleState


def edge_recycling_augmentation(instance, state: PartitionState, sinks: list, p_bar: int,
                                on_augment: Observer = None) -> RecycleResult:
    """Precompute all exchange edges once, then augment repeatedly while the
    running sum of dirty-part counts stays below ``2 * p_bar``.

    ``sinks`` must be current on entry; the returned list is current too.
    """
    estar = exchange.build_reference_graph(instance, state, sinks=sinks)
    rs = RecycleState(estar, set(), sinks, 0)
    aug = 0
    exhausted = False
    while rs.total < 2 * p_bar:
        path = edge_recycling_bfs(instance, state, estar, rs.J, sinks)
        if path is None:
            exhausted = True
            break
        for x in path.interior[1:]:
            rs.J.add(state.owner[x])
        rs.J.add(path.sink)
        new = update_partition(state, path)
        sinks[path.sink] = refresh_sink_set(instance, new, path.sink)
        rs.total += len(rs.J)
        if on_augment:
            on_augment(AugmentEvent(state, path, new, rs))
        state = new
        aug += 1
    return RecycleResult(state, sinks, aug, exhausted, rs)


def _recycle_until_done(instance, state, sinks, p_bar, on_augment, log):
    calls = augs = 0
    while True:
        before = instance.stats()
        rr = edge_recycling_augmentation(instance, state, sinks, p_bar, on_augment)
        log.append(PhaseRecord("edge-recycle", None, rr.augmentations, (instance.stats() - before).total))
        state, sinks = rr.state, rr.sinks
        calls += 1
        augs += rr.augmentations
        if rr.exhausted:
            return state, calls, augs


def solve_edge_recycling(instance, on_augment: Observer = None) -> SolveReport:
    """Greedy estimate, all sink sets, then edge-recycling calls until no path."""
    start = instance.stats()
    log = []
    _, p_bar = greedy_half_approx(instance)
    log.append(PhaseRecord("greedy", None, 0, (instance.stats() - start).total))
    state = PartitionState.empty(instance.n, instance.k)
    calls = augs = 0
    if p_bar > 0:
        before = instance.stats()
        sinks = build_sink_sets(instance, state)
        log.append(PhaseRecord("sinks", None, 0, (instance.stats() - before).total))
        state, calls, augs = _recycle_until_done(instance, state, sinks, p_bar, on_augment, log)
    stats = instance.stats() - start
    return SolveReport("edge-recycle", state, _finish(stats, calls, augs), log, {"p_bar": p_bar})


def solve_combined(instance, d: Optional[int] = None, on_augment: Observer = None) -> SolveReport:
    """Blocking flow while augmenting paths are short, edge recycling after.

    The switch happens once d(s, T) is known to be at least ``d``, by default
    the least integer >= p_bar / k'^(2/3).
    """
    start = instance.stats()
    log = []
    _, p_bar = greedy_half_approx(instance)
    log.append(PhaseRecord("greedy", None, 0, (instance.stats() - start).total))
    state = PartitionState.empty(instance.n, instance.k)
    k_prime, d_auto = combined_threshold(instance.k, p_bar)
    if d is None:
        d = d_auto
    variant = choose_variant(instance.k, p_bar)
    extra = {"p_bar": p_bar, "k_prime": k_prime, "d": d, "variant": variant}
    phases = augs = 0
    if p_bar == 0:  # p <= 2 p_bar, nothing to find
        return SolveReport("combined", state, _finish(instance.stats() - start, 0, 0), log, extra)

    sinks = None
    if variant == "enumeration":
        before = instance.stats()
        sinks = build_sink_sets(instance, state)
        log.append(PhaseRecord("sinks", None, 0, (instance.stats() - before).total))
    lower = 2  # d(s, T) >= 2 always
    done = False
    while lower < d:
        before = instance.stats()
        res = _run_phase(instance, state, variant, sinks, on_augment)
        dist = None if res.distance == INF else int(res.distance)
        log.append(PhaseRecord(variant if res.progressed else "final-search", dist,
                               res.augmentations, (instance.stats() - before).total))
        if not res.progressed:
            done = True
            break
        state = res.state
        phases += 1
        augs += res.augmentations
        lower = int(res.distance) + 1

    if not done:
        if sinks is None:
            before = instance.stats()
            sinks = build_sink_sets(instance, state)
            log.append(PhaseRecord("sinks", None, 0, (instance.stats() - before).total))
        state, calls, more = _recycle_until_done(instance, state, sinks, p_bar, on_augment, log)
        phases += calls
        augs += more
    return SolveReport("combined", state, _finish(instance.stats() - start, phases, augs), log, extra)
