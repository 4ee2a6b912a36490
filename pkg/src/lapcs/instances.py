"""Random instance generation and the plain-text instance format.

File layout (UTF-8, LF, ``#`` starts a comment, blank lines ignored)::

    <length of x>
    <x>
    <number of arcs of x>
    <i1> <i2>          # one line per arc, 1-based, i1 < i2
    ...
    <length of y>
    <y>
    <number of arcs of y>
    <i1> <i2>
    ...
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .model import RNA_ALPHABET, ArcAnnotatedSequence, Instance


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    n_arcs: int
    alphabet: str = RNA_ALPHABET
    seed: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet must be a non-empty string of distinct symbols")
        if not 0 <= self.n_arcs <= self.n * (self.n - 1) // 2:
            raise ValueError(f"cannot place {self.n_arcs} distinct arcs on a sequence of length {self.n}")


def _random_sequence(n: int, n_arcs: int, alphabet: str, rng: random.Random) -> ArcAnnotatedSequence:
    seq = "".join(rng.choice(alphabet) for _ in range(n))
    arcs: set[tuple[int, int]] = set()
    # rejection against the seen set; fine while n_arcs is far below n(n-1)/2
    while len(arcs) < n_arcs:
        a, b = rng.sample(range(1, n + 1), 2)
        arcs.add((a, b) if a < b else (b, a))
    return ArcAnnotatedSequence(seq, frozenset(arcs))


def generate_instance(cfg: GeneratorConfig, rng: random.Random | None = None) -> Instance:
    """Two independent uniform sequences with ``n_arcs`` distinct random arcs each."""
    if rng is None:
        rng = random.Random(cfg.seed)
    x = _random_sequence(cfg.n, cfg.n_arcs, cfg.alphabet, rng)
    y = _random_sequence(cfg.n, cfg.n_arcs, cfg.alphabet, rng)
    return Instance(x, y)


def serialize_instance(instance: Instance) -> str:
    lines = []
    for s in (instance.x, instance.y):
        lines.append(str(len(s)))
        lines.append(s.seq)
        lines.append(str(len(s.arcs)))
        lines.extend(f"{a} {b}" for a, b in s.sorted_arcs())
    return "\n".join(lines) + "\n"


def parse_instance(text: str, alphabet: str | None = None, source: str | None = None) -> Instance:
    """Parse the text format. Without ``alphabet`` any printable ASCII symbol is accepted."""
    rows = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((no, line))
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(rows):
            last = rows[-1][0] if rows else 0
            raise InstanceFormatError(f"unexpected end of input, expected {what}", last + 1, source)
        row = rows[pos]
        pos += 1
        return row

    def take_int(what: str) -> tuple[int, int]:
        no, line = take(what)
        try:
            return no, int(line)
        except ValueError:
            raise InstanceFormatError(f"expected {what}, got {line!r}", no, source) from None

    seqs = []
    for name in ("x", "y"):
        no, length = take_int(f"length of {name}")
        if length < 0:
            raise InstanceFormatError(f"negative length {length}", no, source)
        if length == 0:
            seq_no, seq = no, ""
        else:
            seq_no, seq = take(f"sequence {name}")
        if len(seq) != length:
            raise InstanceFormatError(
                f"sequence {name} has length {len(seq)} but {length} was declared", seq_no, source
            )
        for c in seq:
            ok = c in alphabet if alphabet is not None else (c.isascii() and c.isprintable() and not c.isspace())
            if not ok:
                raise InstanceFormatError(f"unknown symbol {c!r} in sequence {name}", seq_no, source)
        no, m = take_int(f"arc count of {name}")
        if m < 0:
            raise InstanceFormatError(f"negative arc count {m}", no, source)
        arcs = set()
        for _ in range(m):
            no, line = take(f"arc of {name}")
            parts = line.split()
            if len(parts) != 2:
                raise InstanceFormatError(f"arc line must hold two integers, got {line!r}", no, source)
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise InstanceFormatError(f"arc line must hold two integers, got {line!r}", no, source) from None
            if a >= b:
                raise InstanceFormatError(f"arc left endpoint must be smaller than right endpoint: {a} {b}", no, source)
            if a < 1 or b > length:
                raise InstanceFormatError(f"arc endpoint out of range 1..{length}: {a} {b}", no, source)
            if (a, b) in arcs:
                raise InstanceFormatError(f"duplicate arc {a} {b}", no, source)
            arcs.add((a, b))
        seqs.append(ArcAnnotatedSequence(seq, frozenset(arcs)))
    if pos != len(rows):
        raise InstanceFormatError("trailing content after second sequence", rows[pos][0], source)
    return Instance(*seqs)


def read_instance(path, alphabet: str | None = None) -> Instance:
    with open(path, encoding="utf-8") as f:
        return parse_instance(f.read(), alphabet, source=str(path))


def write_instance(path, instance: Instance) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_instance(instance))


# Lengths and arc counts of the ten RNase P instances: (len x, arcs x, len y, arcs y).
REAL_INSTANCES = {
    "Real_1": (369, 119, 377, 124),
    "Real_2": (361, 121, 398, 131),
    "Real_3": (475, 154, 433, 142),
    "Real_4": (383, 127, 377, 124),
    "Real_5": (252, 75, 229, 67),
    "Real_6": (371, 115, 330, 100),
    "Real_7": (384, 119, 369, 112),
    "Real_8": (336, 90, 281, 71),
    "Real_9": (378, 125, 354, 115),
    "Real_10": (398, 135, 405, 138),
}


def check_real_instance(name: str, instance: Instance) -> list[str]:
    """Compare a transcribed real instance against the published counts; returns mismatches."""
    if name not in REAL_INSTANCES:
        raise KeyError(f"unknown real instance {name!r}")
    expected = REAL_INSTANCES[name]
    got = (len(instance.x), len(instance.x.arcs), len(instance.y), len(instance.y.arcs))
    labels = ("length of x", "arcs of x", "length of y", "arcs of y")
    return [f"{lab}: expected {e}, got {g}" for lab, e, g in zip(labels, expected, got) if e != g]
