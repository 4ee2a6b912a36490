"""Global longest common subsequence by dynamic programming (arcs ignored)."""
from __future__ import annotations

MAX_LENGTH = 10_000


def _check(x: str, y: str) -> None:
    if len(x) > MAX_LENGTH or len(y) > MAX_LENGTH:
        raise ValueError(f"sequence longer than {MAX_LENGTH} symbols")


def lcs_table(x: str, y: str) -> list[list[int]]:
    """Full table ``L`` with ``L[i][j]`` the LCS length of ``x[:i]`` and ``y[:j]``."""
    _check(x, y)
    m = len(y)
    table = [[0] * (m + 1)]
    prev = table[0]
    for a in x:
        row = [0] * (m + 1)
        for j in range(1, m + 1):
            if a == y[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                left = row[j - 1]
                up = prev[j]
                row[j] = left if left > up else up
        table.append(row)
        prev = row
    return table


def lcs_length(x: str, y: str) -> int:
    _check(x, y)
    m = len(y)
    prev = [0] * (m + 1)
    for a in x:
        row = [0] * (m + 1)
        for j in range(1, m + 1):
            if a == y[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                left = row[j - 1]
                up = prev[j]
                row[j] = left if left > up else up
        prev = row
    return prev[m]


def lcs_traceback(x: str, y: str) -> frozenset:
    """One optimal LCS as a set of 1-based assignments ``(i, j)``.

    Ties prefer dropping a symbol of ``x`` (moving up) over dropping one of
    ``y``, so the result is deterministic.
    """
    table = lcs_table(x, y)
    i, j = len(x), len(y)
    out = []
    while i > 0 and j > 0:
        cur = table[i][j]
        if table[i - 1][j] == cur:
            i -= 1
        elif table[i][j - 1] == cur:
            j -= 1
        else:
            # x[i] == y[j] and the diagonal carries the match
            out.append((i, j))
            i -= 1
            j -= 1
    return frozenset(out)
