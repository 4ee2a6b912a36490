"""Anytime exact maximum independent set search.

Depth-first branch and bound over bitset-encoded graphs. Each node first
applies the safe degree-0/degree-1 reductions, bounds the residual graph by
a greedy clique cover (every clique contributes at most one vertex to an
independent set), then branches on the residual vertex of maximum degree:
include it (dropping its closed neighbourhood) or exclude it.

The search can be cut off by wall-clock time or by a node count; the node
count makes runs reproducible.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

from .conflict import ConflictGraph, bits

CHECK_EVERY = 1024


@dataclass(frozen=True)
class MisResult:
    best_set: frozenset
    proven_optimal: bool
    nodes_explored: int
    elapsed: float

    def __len__(self):
        return len(self.best_set)


def greedy_mis(g: ConflictGraph) -> frozenset:
    """Maximal independent set by repeated minimum-degree selection."""
    adj = g.adj
    rest = (1 << len(adj)) - 1
    chosen = []
    while rest:
        best_v, best_d = -1, -1
        m = rest
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = (adj[v] & rest).bit_count()
            if best_v < 0 or d < best_d:
                best_v, best_d = v, d
                if d == 0:
                    break
        chosen.append(best_v)
        rest &= ~(adj[best_v] | (1 << best_v))
    return frozenset(chosen)


def clique_cover_size(cand: int, adj) -> int:
    """Number of cliques in a greedy clique cover of the subgraph on ``cand``."""
    count = 0
    while cand:
        count += 1
        q = cand
        while q:
            low = q & -q
            cand ^= low
            q &= adj[low.bit_length() - 1]
    return count


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def solve_mis(
    g: ConflictGraph,
    budget: float | None = None,
    *,
    node_limit: int | None = None,
    initial: Iterable[int] | None = None,
) -> MisResult:
    """Maximum independent set of ``g`` within a time and/or node budget.

    ``initial`` seeds the incumbent and must itself be independent. With
    neither ``budget`` nor ``node_limit`` the search runs to completion.
    The returned set is never smaller than the greedy one or ``initial``.
    """
    if budget is not None and budget <= 0:
        raise ValueError("budget must be positive")
    start = time.perf_counter()
    adj = g.adj
    n = len(adj)

    best = _mask(greedy_mis(g))
    if initial is not None:
        init = _mask(initial)
        if any(adj[v] & init for v in bits(init)):
            raise ValueError("initial set is not independent")
        if init.bit_count() > best.bit_count():
            best = init
    best_size = best.bit_count()

    deadline = None if budget is None else start + budget
    nodes = 0
    complete = True
    stack = [((1 << n) - 1, 0, 0)]
    while stack:
        if node_limit is not None and nodes >= node_limit:
            complete = False
            break
        nodes += 1
        if deadline is not None and nodes % CHECK_EVERY == 0 and time.perf_counter() > deadline:
            complete = False
            break
        cand, size, chosen = stack.pop()
        if size + cand.bit_count() <= best_size:
            continue

        branch_v = -1
        while cand:
            branch_v, branch_d, forced = -1, -1, -1
            m = cand
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                d = (adj[v] & cand).bit_count()
                if d <= 1:
                    forced = v
                    break
                if d > branch_d:
                    branch_v, branch_d = v, d
            if forced < 0:
                break
            # a vertex of degree <= 1 belongs to some maximum independent set
            chosen |= 1 << forced
            size += 1
            cand &= ~(adj[forced] | (1 << forced))

        if not cand:
            if size > best_size:
                best, best_size = chosen, size
            continue
        if size + clique_cover_size(cand, adj) <= best_size:
            continue

        bit = 1 << branch_v
        stack.append((cand & ~bit, size, chosen))
        stack.append((cand & ~(adj[branch_v] | bit), size + 1, chosen | bit))

    return MisResult(
        best_set=frozenset(bits(best)),
        proven_optimal=complete,
        nodes_explored=nodes,
        elapsed=time.perf_counter() - start,
    )
