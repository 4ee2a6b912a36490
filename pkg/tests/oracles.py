"""Brute-force reference implementations used only by the tests.

Everything here works straight from the problem definitions and shares no
code with the package under test.
"""
from __future__ import annotations

import itertools
import random


def is_subsequence(t: str, s: str) -> bool:
    it = iter(s)
    return all(c in it for c in t)


def brute_lcs_length(x: str, y: str) -> int:
    short, other = (x, y) if len(x) <= len(y) else (y, x)
    for k in range(len(short), 0, -1):
        for idx in itertools.combinations(range(len(short)), k):
            if is_subsequence("".join(short[i] for i in idx), other):
                return k
    return 0


def valid_by_definition(s, x: str, y: str, px, py) -> bool:
    """Both validity conditions checked literally for every ordered pair."""
    s = list(s)
    for a in s:
        i, j = a
        if x[i - 1] != y[j - 1]:
            return False
    for (i, j), (k, l) in itertools.permutations(s, 2):
        if not ((i < k and j < l) or (i > k and j > l)):
            return False
        if i < k and (((i, k) in px) != ((j, l) in py)):
            return False
    return True


def brute_max_valid_subset(s, x, y, px, py) -> int:
    s = sorted(s)
    for k in range(len(s), 0, -1):
        for sub in itertools.combinations(s, k):
            if valid_by_definition(sub, x, y, px, py):
                return k
    return 0


def brute_mis_size(n: int, edges) -> int:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        m = mask
        ok = True
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & mask:
                ok = False
                break
            m ^= low
        if ok:
            best = size
    return best


def random_graph(n: int, density: float, rng: random.Random):
    return [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < density]


def random_arcs(n: int, k: int, rng: random.Random):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return set(rng.sample(pairs, min(k, len(pairs))))


def exhaustive_first_occurrence_minimizer(x, y, i, j, letter):
    """Lowest anchored weight over every (r, s) with matching letter after (i, j)."""
    lx, ly = len(x), len(y)
    best = None
    for r in range(i + 1, lx + 1):
        if x[r - 1] != letter:
            continue
        for s in range(j + 1, ly + 1):
            if y[s - 1] != letter:
                continue
            w = (r - i) / (lx - i) + (s - j) / (ly - j)
            if best is None or w < best[0]:
                best = (w, (r, s))
    return None if best is None else best[1]
