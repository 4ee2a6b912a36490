"""Randomized greedy construction of common subsequences.

At every step each letter offers at most one option: the first occurrence of
that letter in ``x`` and in ``y`` after the last chosen assignment. Options
are ranked by the greedy weight (how far into both strings they reach,
relative to the remaining lengths). With probability ``d_rate`` the lightest
option is taken; otherwise one of the ``l_size`` lightest is drawn uniformly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Assignment, InputError, Instance
from .repair import repair


@dataclass(frozen=True)
class ConstructionParams:
    d_rate: float = 0.3
    l_size: int = 2

    def __post_init__(self):
        if not 0.0 <= self.d_rate <= 1.0:
            raise ValueError(f"d_rate must lie in [0, 1], got {self.d_rate}")
        if self.l_size < 1:
            raise ValueError(f"l_size must be >= 1, got {self.l_size}")


class OccurrenceIndex:
    """Per-letter occurrence lists plus next-occurrence tables for both strings.

    ``next_x[p][a]`` is the first position ``> p`` of letter number ``a`` in
    ``x`` (0 if there is none); likewise for ``y``.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.letters = instance.alphabet
        self.lx, self.ly = len(instance.x), len(instance.y)
        self.positions_x = {a: [] for a in self.letters}
        self.positions_y = {a: [] for a in self.letters}
        for i, c in enumerate(instance.x.seq, 1):
            self.positions_x[c].append(i)
        for j, c in enumerate(instance.y.seq, 1):
            self.positions_y[c].append(j)
        self.next_x = self._next_table(instance.x.seq)
        self.next_y = self._next_table(instance.y.seq)

    def _next_table(self, s: str) -> list[tuple[int, ...]]:
        code = {a: k for k, a in enumerate(self.letters)}
        row = [0] * len(self.letters)
        table = [None] * (len(s) + 1)
        table[len(s)] = tuple(row)
        for p in range(len(s), 0, -1):
            row[code[s[p - 1]]] = p
            table[p - 1] = tuple(row)
        return table

    def after(self, i: int, j: int) -> list[Assignment]:
        """One option per letter: first occurrence after ``i`` in x and after ``j`` in y."""
        nx, ny = self.next_x[i], self.next_y[j]
        return [(r, s) for r, s in zip(nx, ny) if r and s]


def weight(z: Assignment, anchor: Assignment | None, lx: int, ly: int) -> float:
    r, s = z
    if anchor is None:
        return r / lx + s / ly
    i, j = anchor
    if not (r > i and s > j):
        raise InputError(f"option {z} does not follow anchor {anchor}")
    return (r - i) / (lx - i) + (s - j) / (ly - j)


def initial_candidates(idx: OccurrenceIndex) -> list[Assignment]:
    return idx.after(0, 0)


def successor_candidates(idx: OccurrenceIndex, last: Assignment) -> list[Assignment]:
    return idx.after(*last)


def construct_common_subsequence(
    idx: OccurrenceIndex, params: ConstructionParams, rng: random.Random
) -> list[Assignment]:
    """The raw constructed sequence of assignments, before any arc repair."""
    lx, ly = idx.lx, idx.ly
    d_rate, l_size = params.d_rate, params.l_size
    out: list[Assignment] = []
    i = j = 0
    options = idx.after(0, 0)
    while options:
        if len(options) > 1:
            # letter order is the tie-break; sort is stable
            ri, rj = lx - i, ly - j
            options.sort(key=lambda z: (z[0] - i) / ri + (z[1] - j) / rj)
        r = rng.random()
        if r < d_rate or l_size == 1:
            pick = options[0]
        else:
            pick = options[rng.randrange(min(l_size, len(options)))]
        out.append(pick)
        i, j = pick
        options = idx.after(i, j)
    return out


def generate_random_solution(
    instance: Instance,
    params: ConstructionParams,
    repair_budget: float | None,
    rng: random.Random,
    *,
    index: OccurrenceIndex | None = None,
    node_limit: int | None = None,
) -> frozenset:
    """Construct a common subsequence and repair it into a valid solution."""
    idx = index if index is not None else OccurrenceIndex(instance)
    raw = construct_common_subsequence(idx, params, rng)
    return repair(raw, instance, repair_budget, node_limit=node_limit).solution
