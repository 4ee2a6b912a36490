import itertools
import random

import pytest

from lapcs.conflict import ConflictGraph
from lapcs.mis import clique_cover_size, greedy_mis, solve_mis
from oracles import brute_mis_size, random_graph

PATH5 = [(0, 1), (1, 2), (2, 3), (3, 4)]
CYCLE5 = PATH5 + [(4, 0)]


def complete(n):
    return ConflictGraph.from_edges(n, itertools.combinations(range(n), 2))


def test_greedy_examples():
    assert greedy_mis(ConflictGraph.from_edges(5, [])) == {0, 1, 2, 3, 4}
    assert len(greedy_mis(complete(4))) == 1
    assert greedy_mis(ConflictGraph.from_edges(5, PATH5)) == {0, 2, 4}


def test_greedy_is_maximal():
    rng = random.Random(5)
    for _ in range(50):
        g = ConflictGraph.from_edges(15, random_graph(15, 0.3, rng))
        s = greedy_mis(g)
        assert g.is_independent(s)
        for v in set(range(15)) - s:
            assert not g.is_independent(s | {v})


def test_solve_examples():
    r = solve_mis(ConflictGraph.from_edges(7, []), 1.0)
    assert len(r) == 7 and r.proven_optimal
    r = solve_mis(ConflictGraph.from_edges(5, CYCLE5), 1.0)
    assert len(r) == 2 and r.proven_optimal
    r = solve_mis(ConflictGraph.from_edges(0, []), 1.0)
    assert r.best_set == frozenset() and r.proven_optimal


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        solve_mis(ConflictGraph.from_edges(2, []), 0)


@pytest.mark.parametrize("density", [0.1, 0.3, 0.5, 0.9])
def test_matches_brute_force(density):
    rng = random.Random(int(density * 100))
    for _ in range(15):
        n = rng.randint(1, 16)
        edges = random_graph(n, density, rng)
        g = ConflictGraph.from_edges(n, edges)
        r = solve_mis(g, node_limit=10**6)
        assert r.proven_optimal
        assert g.is_independent(r.best_set)
        assert len(r) == brute_mis_size(n, edges)
        assert len(r) >= len(greedy_mis(g))


def test_clique_cover_bounds_independent_sets():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 14)
        edges = random_graph(n, 0.4, rng)
        g = ConflictGraph.from_edges(n, edges)
        assert clique_cover_size((1 << n) - 1, g.adj) >= brute_mis_size(n, edges)


def test_node_limit_is_deterministic_and_monotone():
    rng = random.Random(21)
    g = ConflictGraph.from_edges(90, random_graph(90, 0.15, rng))
    prev = 0
    for cap in (1, 10, 100, 1000, 10000):
        a = solve_mis(g, node_limit=cap)
        b = solve_mis(g, node_limit=cap)
        assert a.best_set == b.best_set and a.nodes_explored == b.nodes_explored
        assert len(a) >= prev
        prev = len(a)
        assert g.is_independent(a.best_set)


def test_time_budget_returns_incumbent():
    rng = random.Random(4)
    g = ConflictGraph.from_edges(160, random_graph(160, 0.08, rng))
    r = solve_mis(g, 0.05)
    assert g.is_independent(r.best_set)
    assert len(r) >= len(greedy_mis(g))
    assert r.elapsed < 1.0


def test_initial_incumbent():
    g = ConflictGraph.from_edges(5, PATH5)
    r = solve_mis(g, node_limit=1, initial=[0, 2, 4])
    assert len(r) == 3
    with pytest.raises(ValueError):
        solve_mis(g, initial=[0, 1])
