"""Compressed exchange graph primitives.

Vertices are the ground elements plus a source ``s`` and one sink ``t_i`` per
matroid.  There is an edge ``s -> v`` for every ``v`` outside the current
partitionable set, an edge ``v -> t_i`` when ``S_i + v`` is independent in
``M_i``, and an exchange edge ``v -> u`` (``u`` in ``S_i``) when ``S_i + v`` is
dependent but ``S_i + v - u`` is independent.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

INF = math.inf


class PreconditionError(ValueError):
    pass


@dataclass
class PartitionState:
    """Disjoint parts ``S_1..S_k``; ``owner[v]`` is the part holding ``v`` or -1."""

    parts: list
    owner: list

    @classmethod
    def empty(cls, n: int, k: int) -> "PartitionState":
        return cls([set() for _ in range(k)], [-1] * n)

    @classmethod
    def from_parts(cls, n: int, parts: Iterable[Iterable[int]]) -> "PartitionState":
        parts = [set(p) for p in parts]
        owner = [-1] * n
        for i, p in enumerate(parts):
            for v in p:
                if owner[v] != -1:
                    raise PreconditionError(f"element {v} is in two parts")
                owner[v] = i
        return cls(parts, owner)

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def elements(self) -> set:
        return set().union(*self.parts) if self.parts else set()

    def outside(self) -> list:
        return [v for v, o in enumerate(self.owner) if o < 0]

    def copy(self) -> "PartitionState":
        return PartitionState([set(p) for p in self.parts], list(self.owner))

    def as_lists(self) -> list:
        return [sorted(p) for p in self.parts]


class AugmentingPath(NamedTuple):
    """Path ``s, v_1, ..., v_{l-1}, t_sink``; ``interior`` holds ``v_1..v_{l-1}``."""

    interior: tuple
    sink: int

    def __len__(self):
        # number of edges, s..t
        return len(self.interior) + 1


@dataclass
class ExchangeEdgeSet:
    """Exchange edges ``(v, u)`` plus the sink sets ``F_i``."""

    out_edges: set
    sinks: list
    out_adj: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.out_adj:
            adj = {}
            for v, u in sorted(self.out_edges):
                adj.setdefault(v, []).append(u)
            self.out_adj = adj

    def into(self, targets) -> set:
        return {(v, u) for v, u in self.out_edges if u in targets}


def find_out_edge(m, S: set, v: int, B) -> Optional[int]:
    """First ``u`` of ``sorted(B)`` with ``S + v - u`` independent, else ``None``.

    One query certifies absence (``S + v - B`` dependent); otherwise a binary
    search over prefixes of the ordering finds the first element of the
    circuit of ``S + v``.  At most ``ceil(log2 |B|) + 1`` queries overall.
    """
    if not isinstance(S, (set, frozenset)):
        S = set(S)
    if v in S:
        raise PreconditionError(f"{v} already in S")
    cand = sorted(B)
    if not S.issuperset(cand):
        raise PreconditionError("B must be a subset of S")
    base = list(S.difference(cand))
    base.append(v)
    if not m.is_independent(base) or not cand:
        return None
    # smallest j with S + v - cand[:j] independent; j = len(cand) is known good
    lo, hi = 1, len(cand)
    while lo < hi:
        mid = (lo + hi) // 2
        if m.is_independent(base + cand[mid:]):
            hi = mid
        else:
            lo = mid + 1
    return cand[lo - 1]


def find_in_edge(m, S: set, u: Optional[int], A) -> Optional[int]:
    """First ``v`` of ``sorted(A)`` with ``S - u + v`` independent, else ``None``.

    ``u=None`` searches for ``v`` with ``S + v`` independent (a sink edge).
    Uses rank queries only: one existence check on ``S - u + A`` and a
    binary search over prefixes of ``A``.
    """
    if not isinstance(S, (set, frozenset)):
        S = set(S)
    if u is not None and u not in S:
        raise PreconditionError(f"{u} not in S")
    cand = sorted(A)
    if not cand:
        return None
    if not S.isdisjoint(cand):
        raise PreconditionError("A must avoid S")
    base = list(S)
    if u is not None:
        base.remove(u)
    r0 = len(base)
    if m.rank(base + cand) <= r0:
        return None
    lo, hi = 1, len(cand)
    while lo < hi:
        mid = (lo + hi) // 2
        if m.rank(base + cand[:mid]) > r0:
            hi = mid
        else:
            lo = mid + 1
    return cand[lo - 1]


def update_partition(state: PartitionState, path: AugmentingPath) -> PartitionState:
    """Shift every interior element one step along ``path``; returns a new state
    partitioning ``S + v_1``."""
    inter = path.interior
    if not inter or state.owner[inter[0]] >= 0 or any(state.owner[x] < 0 for x in inter[1:]):
        raise PreconditionError("malformed augmenting path")
    new = state.copy()
    pi = state.owner
    for a, b in zip(inter, inter[1:]):
        t = pi[b]
        new.parts[t].discard(b)
        new.parts[t].add(a)
        new.owner[a] = t
    last = inter[-1]
    new.parts[path.sink].add(last)
    new.owner[last] = path.sink
    return new


def build_reference_graph(instance, state: PartitionState, sinks=None) -> ExchangeEdgeSet:
    """Enumerate every exchange edge and sink edge by direct queries.

    With ``sinks`` given (current ``F_i`` sets) the ``S_i + v`` checks are read
    off them instead of queried.
    """
    n = instance.n
    parts = state.parts
    edges = set()
    F = [set() for _ in parts] if sinks is None else sinks
    for i, (m, part) in enumerate(zip(instance.matroids, parts)):
        members = sorted(part)
        for v in range(n):
            if v in part:
                continue
            if sinks is None:
                if m.is_independent(members + [v]):
                    F[i].add(v)
                    continue
            elif v in sinks[i]:
                continue
            for u in members:
                if m.is_independent([x for x in members if x != u] + [v]):
                    edges.add((v, u))
    return ExchangeEdgeSet(edges, F)


def graph_distances(state: PartitionState, graph: ExchangeEdgeSet):
    """Plain BFS from ``s`` over an enumerated graph: (d, d_sinks, parents)."""
    n = len(state.owner)
    d = [INF] * n
    parent = [None] * n
    queue = deque()
    for v in range(n):
        if state.owner[v] < 0:
            d[v] = 1
            queue.append(v)
    while queue:
        v = queue.popleft()
        for u in graph.out_adj.get(v, ()):
            if d[u] == INF:
                d[u] = d[v] + 1
                parent[u] = v
                queue.append(u)
    dt = [min((d[v] + 1 for v in F), default=INF) for F in graph.sinks]
    return d, dt, parent


def reverse_graph_distances(state: PartitionState, graph: ExchangeEdgeSet):
    """Distance from every element to the sink set, and from ``s``."""
    n = len(state.owner)
    d = [INF] * n
    into = {}
    for v, u in graph.out_edges:
        into.setdefault(u, []).append(v)
    queue = deque()
    for v in sorted(set().union(*graph.sinks) if graph.sinks else ()):
        d[v] = 1
        queue.append(v)
    while queue:
        u = queue.popleft()
        for v in sorted(into.get(u, ())):
            if d[v] == INF:
                d[v] = d[u] + 1
                queue.append(v)
    ds = min((d[v] + 1 for v in range(n) if state.owner[v] < 0), default=INF)
    return d, ds


def reference_shortest_path(state: PartitionState, graph: ExchangeEdgeSet) -> Optional[AugmentingPath]:
    d, dt, parent = graph_distances(state, graph)
    best = min(dt, default=INF)
    if best == INF:
        return None
    j = dt.index(best)
    end = min(v for v in graph.sinks[j] if d[v] + 1 == best)
    chain = [end]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    return AugmentingPath(tuple(reversed(chain)), j)
