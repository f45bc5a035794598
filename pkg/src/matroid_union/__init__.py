"""Matroid partition (matroid union) with counted oracle queries."""
from .algos_ind import (
    block_flow_enumeration,
    block_flow_independence,
    build_sink_sets,
    edge_recycling_augmentation,
    edge_recycling_bfs,
    get_distance_independence,
    greedy_half_approx,
    solve_approx,
    solve_blockflow,
    solve_combined,
    solve_edge_recycling,
)
from .algos_rank import block_flow_rank, get_distance_rank, solve_rank, solve_rank_approx
from .exchange import AugmentingPath, PartitionState, find_in_edge, find_out_edge, update_partition
from .generate import generate
from .kernels import BACKEND
from .oracle import (
    BinaryMatroid,
    GraphicMatroid,
    Instance,
    PartitionMatroid,
    QueryStats,
    UniformMatroid,
)
from .report import SolveReport
from .verify import reference_solver, union_rank_oracle, validate_partition

__version__ = "0.1.0"
