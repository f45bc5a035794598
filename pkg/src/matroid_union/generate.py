"""Seeded random instances.

Every generator draws from a single ``random.Random(seed)`` so an instance is
a pure function of ``(kind, n, k, seed)``.
"""
from __future__ import annotations

import math
import random

from .oracle import BinaryMatroid, GraphicMatroid, Instance, PartitionMatroid, UniformMatroid

KINDS = ("uniform", "partition", "graphic", "binary", "mixed")
BACKENDS = ("uniform", "partition", "graphic", "binary")


def random_uniform(rng, n, k):
    return UniformMatroid(n, rng.randint(0, n))


# Graphic and partition draws scale with k: each matroid's rank is at most
# about n/k and an element is a non-loop with probability min(1, 3/k), so the
# k matroids together have rank close to n and compete for elements.  Looser
# draws make large-k instances solvable in one blocking-flow phase.

def _live(rng, k):
    return rng.random() < 3 / k


def random_partition(rng, n, k):
    nb = rng.randint(1, max(1, math.ceil(n / k)))
    blocks = [[] for _ in range(nb)]
    for v in range(n):
        if _live(rng, k):
            blocks[rng.randrange(nb)].append(v)
    blocks = [b for b in blocks if b]
    caps = [min(len(b), rng.randint(1, 2)) for b in blocks]
    return PartitionMatroid(n, blocks, caps)


def random_graphic(rng, n, k):
    nv = rng.randint(2, max(2, math.ceil(n / k) + 1))
    edges = []
    for _ in range(n):
        a = rng.randrange(nv)
        if _live(rng, k):
            b = rng.randrange(nv - 1)
            edges.append((a, b + (b >= a)))
        else:
            edges.append((a, a))
    return GraphicMatroid(n, nv, edges)


def random_binary(rng, n, k):
    rows = max(1, round(n / 2))
    return BinaryMatroid(n, ["".join(rng.choice("01") for _ in range(n)) for _ in range(rows)])


_MAKERS = {
    "uniform": random_uniform,
    "partition": random_partition,
    "graphic": random_graphic,
    "binary": random_binary,
}


def generate(kind: str, n: int, k: int, seed: int) -> Instance:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    rng = random.Random(seed)
    if kind == "mixed":
        offset = rng.randrange(len(BACKENDS))
        makers = [_MAKERS[BACKENDS[(offset + i) % len(BACKENDS)]] for i in range(k)]
    else:
        makers = [_MAKERS[kind]] * k
    return Instance(n, [make(rng, n, k) for make in makers])
