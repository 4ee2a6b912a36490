"""Top-level LAPCS algorithms.

* :func:`run_heuristic` -- LCS ignoring arcs, then repair.
* :func:`run_ms_heur` -- repeated randomized construction + repair.
* :func:`run_hyb_ea` -- randomized constructions merged with the best-so-far
  solution and re-optimized exactly over their union.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .conflict import build_conflict_graph
from .construct import (
    ConstructionParams,
    OccurrenceIndex,
    generate_random_solution,
)
from .lcs import lcs_traceback
from .mis import solve_mis
from .model import Instance
from .repair import RepairResult, repair

__all__ = [
    "Params",
    "RunResult",
    "RepairResult",
    "repair",
    "run_heuristic",
    "run_ms_heur",
    "run_hyb_ea",
    "ALGORITHMS",
]

# MIS budgets are never allowed to shrink below this when capped by the
# remaining run time.
_MIN_MIS_BUDGET = 0.01


@dataclass(frozen=True)
class Params:
    n_sols: int = 10
    d_rate: float = 0.3
    l_size: int = 2
    # seconds per MIS call; None leaves MIS calls bounded by mis_node_limit only
    t_max: float | None = 5.0
    # Deterministic cap on search nodes per MIS call (repairs and merges).
    mis_node_limit: int | None = None

    def __post_init__(self):
        if self.n_sols < 1:
            raise ValueError("n_sols must be >= 1")
        if self.t_max is not None and self.t_max <= 0:
            raise ValueError("t_max must be positive")
        ConstructionParams(self.d_rate, self.l_size)

    @property
    def construction(self) -> ConstructionParams:
        return ConstructionParams(self.d_rate, self.l_size)


@dataclass
class RunResult:
    algorithm: str
    best: frozenset
    time_to_best: float = 0.0
    total_time: float = 0.0
    iterations: int = 0
    trace: list = field(default_factory=list)  # [(seconds, value)]
    proven_optimal_merges: int = 0

    @property
    def best_value(self) -> int:
        return len(self.best)

    def _improve(self, sol: frozenset, t0: float) -> bool:
        if len(sol) <= len(self.best):
            return False
        self.best = sol
        self.time_to_best = time.perf_counter() - t0
        self.trace.append((self.time_to_best, len(sol)))
        return True


def _stop(t0: float, time_limit: float | None, iterations: int, max_iterations: int | None) -> bool:
    if max_iterations is not None and iterations >= max_iterations:
        return True
    return time_limit is not None and time.perf_counter() - t0 >= time_limit


def _check_limits(time_limit, max_iterations):
    if time_limit is None and max_iterations is None:
        raise ValueError("need a time limit or an iteration cap")
    if time_limit is not None and time_limit <= 0:
        raise ValueError("time_limit must be positive")


def run_heuristic(instance: Instance, budget: float | None = 30.0, *, node_limit: int | None = None) -> RunResult:
    t0 = time.perf_counter()
    fixed = repair(lcs_traceback(instance.x.seq, instance.y.seq), instance, budget, node_limit=node_limit)
    result = RunResult("heuristic", frozenset(), iterations=1, proven_optimal_merges=int(fixed.proven_optimal))
    result._improve(fixed.solution, t0)
    result.time_to_best = result.total_time = time.perf_counter() - t0
    return result


def run_ms_heur(
    instance: Instance,
    params: Params,
    time_limit: float | None,
    rng: random.Random,
    *,
    max_iterations: int | None = None,
) -> RunResult:
    """Multi-start construction; always completes at least one construction."""
    _check_limits(time_limit, max_iterations)
    t0 = time.perf_counter()
    idx = OccurrenceIndex(instance)
    cp = params.construction
    result = RunResult("msheur", frozenset())
    while True:
        sol = generate_random_solution(
            instance, cp, params.t_max, rng, index=idx, node_limit=params.mis_node_limit
        )
        result.iterations += 1
        result._improve(sol, t0)
        if _stop(t0, time_limit, result.iterations, max_iterations):
            break
    result.total_time = time.perf_counter() - t0
    return result


def run_hyb_ea(
    instance: Instance,
    params: Params,
    time_limit: float | None,
    rng: random.Random,
    *,
    max_iterations: int | None = None,
) -> RunResult:
    """Evolutionary search whose crossover is exact solution merging.

    Each iteration builds ``n_sols`` repaired random solutions, pools their
    assignments with the best-so-far solution and solves a maximum
    independent set on the conflict graph of the pool. The MIS search is
    seeded with the largest solution already in the pool, so the best value
    never drops even when the merge budget runs out.
    """
    _check_limits(time_limit, max_iterations)
    t0 = time.perf_counter()
    idx = OccurrenceIndex(instance)
    cp = params.construction
    result = RunResult("hybea", frozenset())
    while True:
        pool = set(result.best)
        seed_sol = result.best
        for _ in range(params.n_sols):
            sol = generate_random_solution(
                instance, cp, params.t_max, rng, index=idx, node_limit=params.mis_node_limit
            )
            pool |= sol
            if len(sol) > len(seed_sol):
                seed_sol = sol
        verts = sorted(pool)
        g = build_conflict_graph(verts, instance)
        pos = {a: v for v, a in enumerate(verts)}
        budget = params.t_max
        if time_limit is not None:
            remaining = time_limit - (time.perf_counter() - t0)
            budget = max(_MIN_MIS_BUDGET, remaining if budget is None else min(budget, remaining))
        merged = solve_mis(
            g, budget, node_limit=params.mis_node_limit, initial=[pos[a] for a in seed_sol]
        )
        result.proven_optimal_merges += merged.proven_optimal
        result.iterations += 1
        result._improve(frozenset(verts[v] for v in merged.best_set), t0)
        if _stop(t0, time_limit, result.iterations, max_iterations):
            break
    result.total_time = time.perf_counter() - t0
    return result


ALGORITHMS = ("heuristic", "msheur", "hybea")
