import random

import pytest
from hypothesis import strategies as st

from lapcs.model import Instance

_ACCEPTANCE: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number: int, name: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE.append(f"[criterion {number}] {status}  {name}  {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def make_random_instance(rng: random.Random, max_len: int = 8, alphabet: str = "ACGU", min_len: int = 0, arc_p: float = 0.3) -> Instance:
    seqs = []
    for _ in range(2):
        n = rng.randint(min_len, max_len)
        s = "".join(rng.choice(alphabet) for _ in range(n))
        arcs = {(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < arc_p / max(n, 1) * 2}
        seqs.append((s, arcs))
    return Instance.from_strings(seqs[0][0], seqs[1][0], seqs[0][1], seqs[1][1])


@st.composite
def instances(draw, max_len=8, alphabet="ACG"):
    out = []
    for _ in range(2):
        n = draw(st.integers(0, max_len))
        s = draw(st.text(alphabet=alphabet, min_size=n, max_size=n))
        pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        arcs = draw(st.sets(st.sampled_from(pairs), max_size=min(len(pairs), n))) if pairs else set()
        out.append((s, arcs))
    return Instance.from_strings(out[0][0], out[1][0], out[0][1], out[1][1])
