"""Name -> solver table shared by the CLI and the bench harness."""
from __future__ import annotations

from typing import Optional

from .algos_ind import (
    greedy_half_approx,
    solve_approx,
    solve_blockflow,
    solve_combined,
    solve_edge_recycling,
)
from .algos_rank import solve_rank, solve_rank_approx
from .report import SolveReport
from .verify import reference_solver

ALGOS = ("greedy", "blockflow-ind", "blockflow-enum", "blockflow-rank", "edge-recycle", "combined", "reference")
EXACT_ALGOS = ("blockflow-ind", "blockflow-enum", "blockflow-rank", "edge-recycle", "combined", "reference")
RANK_ALGOS = frozenset({"blockflow-rank"})


def _greedy(instance):
    start = instance.stats()
    state, p_bar = greedy_half_approx(instance)
    return SolveReport("greedy", state, instance.stats() - start, extra={"p_bar": p_bar})


def run_algo(instance, algo: str, eps: Optional[float] = None, d: Optional[int] = None,
             on_augment=None) -> SolveReport:
    """Run ``algo`` on ``instance``; ``eps`` turns the blocking-flow solvers into
    their fixed-phase approximations, ``d`` overrides the combined switch point."""
    if algo == "greedy":
        return _greedy(instance)
    if algo == "blockflow-ind":
        if eps is not None:
            return solve_approx(instance, eps, on_augment)
        return solve_blockflow(instance, "binary-search", on_augment)
    if algo == "blockflow-enum":
        return solve_blockflow(instance, "enumeration", on_augment)
    if algo == "blockflow-rank":
        if eps is not None:
            return solve_rank_approx(instance, eps, on_augment)
        return solve_rank(instance, on_augment)
    if algo == "edge-recycle":
        return solve_edge_recycling(instance, on_augment)
    if algo == "combined":
        return solve_combined(instance, d, on_augment)
    if algo == "reference":
        return reference_solver(instance, on_augment)
    raise ValueError(f"unknown algo {algo!r}")

