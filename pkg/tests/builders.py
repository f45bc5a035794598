"""Small hand-built instances and brute-force checks shared by the tests."""
import itertools
import random

from matroid_union.generate import KINDS, generate
from matroid_union.oracle import BinaryMatroid, GraphicMatroid, Instance, PartitionMatroid, UniformMatroid


def triangle(k=2):
    return Instance(3, [GraphicMatroid(3, 3, [(0, 1), (1, 2), (0, 2)]) for _ in range(k)])


def uniform_copies(n=3, r=1, k=2):
    return Instance(n, [UniformMatroid(n, r) for _ in range(k)])


def all_loops(n=4, k=3):
    ms = [UniformMatroid(n, 0), PartitionMatroid(n, [], []), GraphicMatroid(n, 1, [(0, 0)] * n),
          BinaryMatroid(n, ["0" * n])]
    return Instance(n, [ms[i % 4] for i in range(k)])


def suite(count, n_max=12, k_max=6, seed=0):
    """``count`` seeded instances cycling through every kind."""
    out = []
    for s in range(count):
        rng = random.Random(seed * 7919 + s)
        kind = KINDS[s % len(KINDS)]
        n, k = rng.randint(1, n_max), rng.randint(1, k_max)
        out.append((f"{kind}-{s}", generate(kind, n, k, seed * 7919 + s)))
    return out


def brute_union_size(instance):
    """Largest partitionable set by trying every assignment; tiny n only."""
    n, k = instance.n, instance.k
    view = instance.uncounted()
    best = 0
    for assign in itertools.product(range(-1, k), repeat=n):
        size = sum(a >= 0 for a in assign)
        if size <= best:
            continue
        parts = [[v for v in range(n) if assign[v] == i] for i in range(k)]
        if all(m.is_independent(p) for m, p in zip(view.matroids, parts)):
            best = size
    return best
