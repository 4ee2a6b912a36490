"""Arc-annotated sequences, assignments and solution validity.

Positions are 1-based everywhere: an assignment ``(i, j)`` pairs position
``i`` of ``x`` with position ``j`` of ``y`` and requires ``x[i] == y[j]``.
A solution is any collection of assignments; it is *valid* when it is a
common subsequence whose induced arcs agree on both sides.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

Arc = tuple[int, int]
Assignment = tuple[int, int]
Solution = frozenset  # frozenset[Assignment]

RNA_ALPHABET = "ACGU"


class InputError(ValueError):
    """Raised when an operation receives data that violates its contract."""


@dataclass(frozen=True)
class ArcAnnotatedSequence:
    seq: str
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset((int(a), int(b)) for a, b in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        n = len(self.seq)
        for a, b in arcs:
            if not a < b:
                raise InputError(f"arc ({a}, {b}): left endpoint must be smaller")
            if a < 1 or b > n:
                raise InputError(f"arc ({a}, {b}) out of range for length {n}")

    def __len__(self):
        return len(self.seq)

    @cached_property
    def partners(self) -> dict[int, tuple[int, ...]]:
        """Endpoint -> sorted tuple of positions it is joined to by an arc."""
        adj: dict[int, list[int]] = {}
        for a, b in self.arcs:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return {k: tuple(sorted(v)) for k, v in adj.items()}

    def has_arc(self, a: int, b: int) -> bool:
        if a > b:
            a, b = b, a
        return (a, b) in self.arcs

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class Instance:
    x: ArcAnnotatedSequence
    y: ArcAnnotatedSequence

    @classmethod
    def from_strings(cls, x: str, y: str, px: Iterable[Arc] = (), py: Iterable[Arc] = ()) -> "Instance":
        return cls(ArcAnnotatedSequence(x, frozenset(px)), ArcAnnotatedSequence(y, frozenset(py)))

    @property
    def alphabet(self) -> str:
        return "".join(sorted(set(self.x.seq) | set(self.y.seq)))

    @cached_property
    def universe(self) -> tuple[Assignment, ...]:
        return tuple(build_assignment_universe(self))


def build_assignment_universe(instance: Instance) -> list[Assignment]:
    """All matching position pairs in row-major order."""
    by_letter: dict[str, list[int]] = {}
    for j, c in enumerate(instance.y.seq, 1):
        by_letter.setdefault(c, []).append(j)
    out = []
    for i, c in enumerate(instance.x.seq, 1):
        for j in by_letter.get(c, ()):
            out.append((i, j))
    return out


def universe_size(instance: Instance) -> int:
    cx, cy = Counter(instance.x.seq), Counter(instance.y.seq)
    return sum(cx[a] * cy[a] for a in cx)


class Violation(enum.Enum):
    COMMON_SUBSEQUENCE = "common-subsequence"
    ARC_PRESERVATION = "arc-preservation"


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: list = field(default_factory=list)  # [(a, b, Violation)]
    truncated: bool = False

    def __bool__(self):
        return self.valid


def check_assignment(a: Assignment, instance: Instance) -> None:
    i, j = a
    if not (1 <= i <= len(instance.x) and 1 <= j <= len(instance.y)):
        raise InputError(f"assignment {a} out of range")
    if instance.x.seq[i - 1] != instance.y.seq[j - 1]:
        raise InputError(f"assignment {a} pairs different letters")


def is_valid_solution(s: Iterable[Assignment], instance: Instance, limit: int = 100) -> ValidityReport:
    """Check both validity conditions for every pair of assignments in ``s``.

    Violations are reported as ``(a, b, kind)`` with ``a < b``
    lexicographically, in sorted order, capped at ``limit`` entries.
    """
    members = sorted(set(s))
    for a in members:
        check_assignment(a, instance)
    px, py = instance.x.arcs, instance.y.arcs
    violations = []
    valid = True
    truncated = False
    for (i, j), (k, l) in itertools.combinations(members, 2):
        # sorted, so i <= k and (i == k implies j < l)
        if i == k or j >= l:
            kind = Violation.COMMON_SUBSEQUENCE
        elif ((i, k) in px) != ((j, l) in py):
            kind = Violation.ARC_PRESERVATION
        else:
            continue
        valid = False
        if len(violations) < limit:
            violations.append(((i, j), (k, l), kind))
        else:
            truncated = True
            break
    return ValidityReport(valid, violations, truncated)


def decode_subsequence(s: Iterable[Assignment], instance: Instance) -> str:
    members = sorted(set(s))
    report = is_valid_solution(members, instance, limit=1)
    if not report.valid:
        raise InputError(f"cannot decode an invalid solution: {report.violations[0]}")
    return "".join(instance.x.seq[i - 1] for i, _ in members)


class ArcStructureClass(enum.IntEnum):
    # ordered from most to least restrictive
    PLAIN = 0
    CHAIN = 1
    NESTED = 2
    CROSSING = 3
    UNLIMITED = 4


def classify_arc_structure(seq: ArcAnnotatedSequence) -> ArcStructureClass:
    """Most restrictive class of the arc annotation.

    No-crossing is taken in its usual sense: any two arcs are either nested
    or disjoint.
    """
    arcs = seq.sorted_arcs()
    if not arcs:
        return ArcStructureClass.PLAIN
    endpoints = [p for arc in arcs for p in arc]
    if len(set(endpoints)) != len(endpoints):
        return ArcStructureClass.UNLIMITED
    crossing = nesting = False
    for (a, b), (c, d) in itertools.combinations(arcs, 2):
        # a < c since endpoints are distinct and arcs are sorted
        if c < b < d:
            crossing = True
        elif d < b:
            nesting = True
    if crossing:
        return ArcStructureClass.CROSSING
    if nesting:
        return ArcStructureClass.NESTED
    return ArcStructureClass.CHAIN
