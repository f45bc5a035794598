import itertools
import json
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_union import kernels
from matroid_union.generate import KINDS, generate
from matroid_union.oracle import (
    BinaryMatroid,
    GraphicMatroid,
    Instance,
    InstanceFormatError,
    InstanceMismatchError,
    OracleModeError,
    PartitionMatroid,
    UniformMatroid,
    snapshot_stats,
)


def nx_rank(edges, subset):
    g = nx.MultiGraph()
    for e in subset:
        g.add_edge(*edges[e])
    return g.number_of_nodes() - nx.number_connected_components(g) if subset else 0


def gf2_rank_rows(rows, subset):
    if not rows or not subset:
        return 0
    m = np.array([[int(r[c]) for c in subset] for r in rows], dtype=np.uint8)
    rank, col = 0, 0
    nr, nc = m.shape
    while rank < nr and col < nc:
        piv = np.nonzero(m[rank:, col])[0]
        if piv.size:
            p = rank + piv[0]
            m[[rank, p]] = m[[p, rank]]
            for r in range(nr):
                if r != rank and m[r, col]:
                    m[r] ^= m[rank]
            rank += 1
        col += 1
    return rank


def partition_rank(blocks, caps, subset):
    s = set(subset)
    return sum(min(len(s & set(b)), c) for b, c in zip(blocks, caps))


def subsets(n):
    for mask in range(1 << n):
        yield mask, [v for v in range(n) if mask >> v & 1]


@st.composite
def graphic(draw):
    n = draw(st.integers(0, 8))
    nv = draw(st.integers(1, 5))
    edges = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), min_size=n, max_size=n))
    return GraphicMatroid(n, nv, edges)


@st.composite
def binary(draw):
    n = draw(st.integers(0, 8))
    rows = draw(st.lists(st.text("01", min_size=n, max_size=n), min_size=0, max_size=5))
    return BinaryMatroid(n, rows)


@st.composite
def partition(draw):
    n = draw(st.integers(0, 8))
    labels = draw(st.lists(st.integers(-1, 3), min_size=n, max_size=n))
    blocks = [[v for v in range(n) if labels[v] == b] for b in range(4)]
    blocks = [b for b in blocks if b]
    caps = [draw(st.integers(0, len(b))) for b in blocks]
    return PartitionMatroid(n, blocks, caps)


def reference_rank(m, subset):
    if isinstance(m, GraphicMatroid):
        return nx_rank(m.edges, subset)
    if isinstance(m, BinaryMatroid):
        return gf2_rank_rows(m.rows, subset)
    if isinstance(m, PartitionMatroid):
        return partition_rank(m.blocks, m.capacities, subset)
    return min(len(subset), m.r)


@settings(max_examples=60, deadline=None)
@given(st.one_of(graphic(), binary(), partition()))
def test_queries_match_reference(m):
    table = m.subset_ranks()
    for mask, s in subsets(m.n):
        r = reference_rank(m, s)
        assert m.rank(s) == r
        assert m.is_independent(s) == (r == len(s))
        assert table[mask] == r


@settings(max_examples=40, deadline=None)
@given(st.one_of(graphic(), binary(), partition()))
def test_matroid_axioms(m):
    r = m.subset_ranks()
    n = m.n
    for a in range(1 << n):
        assert 0 <= r[a] <= bin(a).count("1")
        for v in range(n):
            b = a | (1 << v)
            assert r[a] <= r[b] <= r[a] + 1  # unit increase, monotone
        for b in range(a, 1 << n, max(1, (1 << n) // 16)):
            assert r[a | b] + r[a & b] <= r[a] + r[b]  # submodular


def test_uniform_rank_and_counters():
    m = UniformMatroid(5, 2)
    assert m.rank([0, 1, 2]) == 2
    assert m.is_independent([3, 4])
    assert not m.is_independent([0, 3, 4])
    assert (m.independence_count, m.rank_count) == (2, 1)
    m.reset_stats()
    assert (m.independence_count, m.rank_count) == (0, 0)


def test_bad_id_raises_without_counting():
    for m in (UniformMatroid(3, 1), PartitionMatroid(3, [[0, 1]], [1]), GraphicMatroid(3, 2, [(0, 1)] * 3),
              BinaryMatroid(3, ["101"]), BinaryMatroid(3, [])):
        with pytest.raises(InstanceMismatchError):
            m.is_independent([0, 3])
        with pytest.raises(InstanceMismatchError):
            m.rank([-1])
        assert (m.independence_count, m.rank_count) == (0, 0)


def test_independence_only_mode():
    inst = Instance(3, [UniformMatroid(3, 1)])
    inst.set_independence_only()
    with pytest.raises(OracleModeError):
        inst.matroids[0].rank([0])
    assert inst.matroids[0].is_independent([0])
    assert inst.stats().rank_queries == 0


def test_uncounted_view_and_copy():
    inst = generate("mixed", 6, 4, 3)
    view = inst.uncounted()
    for m in view.matroids:
        m.is_independent([0, 1])
        m.rank([0, 1, 2])
    assert inst.stats().total == 0
    inst.matroids[0].rank([1])
    clone = inst.copy()
    assert clone.stats().total == 0 and inst.stats().total == 1
    assert clone.dumps() == inst.dumps()


def test_stats_per_matroid():
    inst = Instance(2, [UniformMatroid(2, 1), UniformMatroid(2, 2)])
    inst.matroids[1].is_independent([0])
    inst.matroids[1].rank([0])
    s = inst.stats()
    assert s.per_matroid_independence == (0, 1) and s.per_matroid_rank == (0, 1)
    assert snapshot_stats(inst.matroids[1]).total == 2
    assert (s - s).total == 0


@pytest.mark.parametrize("kind", KINDS)
def test_round_trip_is_byte_identical(kind):
    text = generate(kind, 9, 3, 11).dumps()
    assert Instance.loads(text).dumps() == text
    assert generate(kind, 9, 3, 11).dumps() == text


@pytest.mark.parametrize("bad", [
    "not json",
    "[]",
    '{"n": 2}',
    '{"n": 2, "matroids": []}',
    '{"n": -1, "matroids": [{"type": "uniform", "r": 1}]}',
    '{"n": 2, "matroids": [{"type": "uniform", "r": 1}], "extra": 0}',
    '{"n": 2, "matroids": [{"type": "matching"}]}',
    '{"n": 2, "matroids": [{"type": "uniform"}]}',
    '{"n": 2, "matroids": [{"type": "uniform", "r": -1}]}',
    '{"n": 2, "matroids": [{"type": "partition", "blocks": [[0], [0]], "capacities": [1, 1]}]}',
    '{"n": 2, "matroids": [{"type": "partition", "blocks": [[0, 5]], "capacities": [1]}]}',
    '{"n": 2, "matroids": [{"type": "partition", "blocks": [[0]], "capacities": []}]}',
    '{"n": 2, "matroids": [{"type": "graphic", "num_vertices": 2, "edges": [[0, 1]]}]}',
    '{"n": 1, "matroids": [{"type": "graphic", "num_vertices": 2, "edges": [[0, 2]]}]}',
    '{"n": 2, "matroids": [{"type": "binary", "rows": ["1"]}]}',
    '{"n": 2, "matroids": [{"type": "binary", "rows": ["12"]}]}',
])
def test_malformed_instances(bad):
    with pytest.raises(InstanceFormatError):
        Instance.loads(bad)


def test_large_binary_subset_ranks_exact():
    # more than 63 rows exercises the arbitrary-precision path
    rng = random.Random(5)
    rows = ["".join(rng.choice("01") for _ in range(6)) for _ in range(70)]
    m = BinaryMatroid(6, rows)
    table = m.subset_ranks()
    for mask, s in subsets(6):
        assert table[mask] == gf2_rank_rows(rows, s) == m.rank(s)


@pytest.mark.skipif(kernels.BACKEND != "compiled", reason="extension not built")
def test_compiled_and_pure_kernels_agree():
    from array import array

    rng = random.Random(1)
    comp, pure = kernels, kernels.pure
    for _ in range(300):
        n = rng.randint(1, 40)
        elems = rng.sample(range(n), rng.randint(0, n))
        if rng.random() < 0.1:
            elems.append(n + 1)
        nv = rng.randint(1, 8)
        tail = array("i", [rng.randrange(nv) for _ in range(n)])
        head = array("i", [rng.randrange(nv) for _ in range(n)])
        words = rng.randint(1, 2)
        cols = array("Q", [rng.getrandbits(64) & rng.getrandbits(64) for _ in range(n * words)])
        block_of = array("i", [rng.randrange(-1, 4) for _ in range(n)])
        caps = array("i", [rng.randint(0, 3) for _ in range(4)])
        for stop in (False, True):
            assert comp.count_valid(elems, n) == pure.count_valid(elems, n)
            assert comp.forest_rank(elems, tail, head, array("i", range(nv)), stop) == \
                pure.forest_rank(elems, tail, head, array("i", range(nv)), stop)
            assert comp.gf2_rank(elems, cols, words, stop) == pure.gf2_rank(elems, cols, words, stop)
            assert comp.partition_rank(elems, block_of, caps, array("i", [0] * 4), stop) == \
                pure.partition_rank(elems, block_of, caps, array("i", [0] * 4), stop)


def test_generator_rejects_bad_sizes():
    with pytest.raises(ValueError):
        generate("graphic", 0, 2, 1)
    with pytest.raises(ValueError):
        generate("graphic", 3, 0, 1)
    with pytest.raises(ValueError):
        generate("matching", 3, 2, 1)


def test_mixed_rotates_backends():
    inst = generate("mixed", 8, 8, 2)
    kinds = [m.kind for m in inst.matroids]
    assert len(set(kinds[:4])) == 4 and kinds[:4] == kinds[4:]
    d = json.loads(inst.dumps())
    assert d["n"] == 8 and len(d["matroids"]) == 8


def _fingerprint():
    from matroid_union.solvers import EXACT_ALGOS, run_algo

    out = []
    for seed in range(40):
        inst = generate(KINDS[seed % len(KINDS)], 3 + seed % 9, 1 + seed % 5, seed)
        for algo in EXACT_ALGOS:
            rep = run_algo(inst.copy(), algo)
            out.append([rep.p, rep.stats.independence_queries, rep.stats.rank_queries, rep.state.as_lists()])
    return out


def test_pure_backend_gives_identical_runs():
    import os
    import subprocess
    import sys

    code = "import json, test_oracle; print(json.dumps(test_oracle._fingerprint()))"
    env = dict(os.environ, MATROID_UNION_PURE="1",
               PYTHONPATH=os.pathsep.join([os.path.dirname(__file__), os.environ.get("PYTHONPATH", "")]))
    run = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert json.loads(run.stdout) == _fingerprint()
