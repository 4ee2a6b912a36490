"""Turn a common subsequence into a valid solution by dropping assignments."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .conflict import build_conflict_graph
from .mis import solve_mis
from .model import Assignment, InputError, Instance


@dataclass(frozen=True)
class RepairResult:
    solution: frozenset
    proven_optimal: bool


def repair(
    s: Iterable[Assignment],
    instance: Instance,
    budget: float | None = None,
    *,
    node_limit: int | None = None,
) -> RepairResult:
    """Largest valid subset of ``s`` found within the budget.

    ``s`` must already be a common subsequence; only arc conflicts are
    resolved, by a maximum independent set on its conflict graph.
    """
    members = sorted(set(s))
    for (i, j), (k, l) in zip(members, members[1:]):
        if i == k or j >= l:
            raise InputError(f"{(i, j)} and {(k, l)} break the common subsequence condition")
    g = build_conflict_graph(members, instance)
    if not any(g.adj):
        return RepairResult(frozenset(members), True)
    res = solve_mis(g, budget, node_limit=node_limit)
    return RepairResult(frozenset(members[v] for v in res.best_set), res.proven_optimal)
