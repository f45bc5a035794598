import pytest

from builders import all_loops, brute_union_size, suite, triangle, uniform_copies
from matroid_union.exchange import PartitionState
from matroid_union.generate import generate
from matroid_union.verify import OracleTooLarge, reference_solver, union_rank_oracle, validate_partition


def test_oracle_examples():
    v = union_rank_oracle(triangle())
    assert v.p_true == 3
    v = union_rank_oracle(uniform_copies())
    assert v.p_true == 2 and v.witness_T == (0, 1, 2)
    assert union_rank_oracle(all_loops()).p_true == 0


def test_oracle_matches_assignment_search():
    # exhaustive search over element -> part assignments, a different route
    for _, inst in suite(150, n_max=6, k_max=3, seed=3):
        assert union_rank_oracle(inst).p_true == brute_union_size(inst)


def test_oracle_refuses_large_n():
    with pytest.raises(OracleTooLarge):
        union_rank_oracle(generate("uniform", 21, 1, 0))


def test_oracle_leaves_counters_alone():
    inst = generate("mixed", 8, 4, 1)
    union_rank_oracle(inst)
    validate_partition(inst, PartitionState.empty(8, 4))
    assert inst.stats().total == 0


def test_reference_solver():
    assert reference_solver(triangle()).p == 3
    inst = generate("uniform", 6, 1, 0)
    inst.matroids[0].r = 6
    assert reference_solver(inst).p == 6
    for _, inst in suite(300, seed=8):
        rep = reference_solver(inst)
        assert rep.p == union_rank_oracle(inst).p_true
        assert validate_partition(inst, rep.state)


def test_validate_partition_rejects_corruption():
    inst = triangle()
    assert validate_partition(inst, PartitionState.empty(3, 2))
    good = reference_solver(inst.copy()).state
    assert validate_partition(inst, good)
    dup = good.copy()
    dup.parts[1].add(0)
    assert not validate_partition(inst, dup)
    dependent = PartitionState.from_parts(3, [[0, 1, 2], []])
    assert not validate_partition(inst, dependent)
    stray = PartitionState.from_parts(3, [[0], []])
    stray.owner[2] = 1
    assert not validate_partition(inst, stray)
    assert not validate_partition(inst, PartitionState.empty(3, 3))


def test_empty_ground_set():
    from matroid_union.oracle import Instance
    from matroid_union.solvers import ALGOS, run_algo

    inst = Instance.loads('{"n": 0, "matroids": [{"type": "uniform", "r": 0}, '
                          '{"type": "graphic", "num_vertices": 0, "edges": []}, {"type": "binary", "rows": []}]}')
    assert union_rank_oracle(inst).p_true == 0
    for algo in ALGOS:
        rep = run_algo(inst.copy(), algo)
        assert rep.p == 0 and rep.state.as_lists() == [[], [], []]
