"""Pairwise conflicts between assignments and the conflict graph over them.

Independent sets of the conflict graph built over a set of assignments are
exactly the valid solutions drawn from that set, so maximizing a solution
inside any variable subset is a maximum independent set problem.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import Assignment, InputError, Instance


def in_conflict(a: Assignment, b: Assignment, px, py) -> bool:
    if a == b:
        raise InputError(f"an assignment cannot conflict with itself: {a}")
    (i, j), (k, l) = (a, b) if a[0] <= b[0] else (b, a)
    if i == k or j >= l:
        return True
    return ((i, k) in px) != ((j, l) in py)


@dataclass(frozen=True)
class ConflictGraph:
    """Vertices are assignments; ``adj[v]`` is the neighbour bitset of vertex ``v``."""

    vertices: tuple
    adj: tuple

    def __len__(self):
        return len(self.vertices)

    def index(self) -> dict:
        return {a: v for v, a in enumerate(self.vertices)}

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def edges(self):
        for u, m in enumerate(self.adj):
            for v in bits(m >> (u + 1)):
                yield u, u + 1 + v

    def is_independent(self, vs: Iterable[int]) -> bool:
        mask = 0
        for v in vs:
            mask |= 1 << v
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def to_edge_list(self) -> str:
        """Debug export: one ``"u v"`` line per edge, 0-based, ``u < v``."""
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], vertices: Sequence | None = None) -> "ConflictGraph":
        """Plain graph constructor, mostly for tests and generic MIS use."""
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InputError("self-loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(vertices) if vertices is not None else tuple(range(n)), tuple(adj))


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_conflict_graph(variables: Iterable[Assignment], instance: Instance) -> ConflictGraph:
    """Conflict graph over ``variables`` (kept in the given order)."""
    verts = tuple(variables)
    if len(set(verts)) != len(verts):
        raise InputError("duplicate assignments in conflict graph input")
    px, py = instance.x.arcs, instance.y.arcs
    n = len(verts)
    adj = [0] * n
    # Order conflicts: pairs not strictly increasing in both coordinates.
    # Sorting by (i, j) lets each vertex only look at later ones.
    order = sorted(range(n), key=verts.__getitem__)
    for p, u in enumerate(order):
        i, j = verts[u]
        mask = 0
        for v in order[p + 1:]:
            k, l = verts[v]
            if k == i or l <= j:
                mask |= 1 << v
            elif ((i, k) in px) != ((j, l) in py):
                mask |= 1 << v
        adj[u] |= mask
        for v in bits(mask):
            adj[v] |= 1 << u
    return ConflictGraph(verts, tuple(adj))
