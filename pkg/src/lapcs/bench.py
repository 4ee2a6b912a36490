"""Benchmark harness: run the three algorithms over instance sets, emit CSV.

Per-run seeds are split from the master seed as
``master XOR first_8_bytes(sha256("<instance_id>|<algorithm>|<repetition>"))``,
and generated instances get ``master XOR sha256("<instance_id>|instance")``,
so results are independent of execution order and worker count.
"""
from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
import random
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .instances import GeneratorConfig, generate_instance, read_instance
from .model import Instance
from .solvers import ALGORITHMS, Params, run_heuristic, run_hyb_ea, run_ms_heur

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "instance_id",
    "n",
    "n_arcs",
    "algorithm",
    "seed",
    "best_value",
    "time_to_best_s",
    "total_time_s",
    "iterations",
    "proven_optimal_merges",
)
MEAN_PREFIX = "MEAN:"
FILE_TIME_LIMIT = 30.0

# Tuned settings per sequence length: n -> (n_sols, d_rate, l_size, t_max)
TUNED = {
    100: (10, 0.3, 2, 5.0),
    200: (5, 0.7, 3, 1.0),
    300: (5, 0.7, 2, 5.0),
    400: (5, 0.7, 3, 10.0),
    500: (5, 0.3, 2, 20.0),
    600: (5, 0.7, 2, 5.0),
    700: (5, 0.5, 2, 20.0),
    800: (5, 0.7, 2, 5.0),
    900: (5, 0.5, 2, 5.0),
    1000: (5, 0.7, 2, 5.0),
}


class BenchError(Exception):
    """Harness-level failure (bad input data, inconsistent result rows)."""


def default_params_for(n: int) -> Params:
    """Tuned parameters of the nearest tabulated length; ties go to the larger."""
    if n < 1:
        raise ValueError("n must be >= 1")
    key = min(TUNED, key=lambda k: (abs(k - n), -k))
    n_sols, d_rate, l_size, t_max = TUNED[key]
    return Params(n_sols=n_sols, d_rate=d_rate, l_size=l_size, t_max=t_max)


def derive_seed(master: int, *parts) -> int:
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return (master ^ int.from_bytes(digest[:8], "big")) & (2**64 - 1)


@dataclass
class BenchConfig:
    mode: str = "all"
    files: Sequence[str] = ()
    ns: Sequence[int] = ()
    arc_fractions: Sequence[float] = ()
    count: int = 30
    reps: int = 1
    # None: n/10 seconds for generated instances, 30 s for files
    time_limit: float | None = None
    overrides: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None
    jobs: int = 1
    max_iterations: int | None = None
    mis_node_limit: int | None = None
    # no wall-clock budgets anywhere; timing columns left blank
    deterministic: bool = False
    alphabet: str | None = None

    def __post_init__(self):
        if self.mode not in (*ALGORITHMS, "all"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")
        if self.deterministic and (self.max_iterations is None or self.mis_node_limit is None):
            raise ValueError("deterministic runs need an iteration cap and an MIS node limit")
        if not self.files and not (self.ns and self.arc_fractions):
            raise ValueError("need instance files or generator settings (n values and arc fractions)")

    @property
    def algorithms(self) -> tuple[str, ...]:
        return ALGORITHMS if self.mode == "all" else (self.mode,)


@dataclass(frozen=True)
class BenchInstance:
    instance_id: str
    instance: Instance
    generated: bool


def iter_instances(cfg: BenchConfig) -> list[BenchInstance]:
    out = []
    for path in cfg.files:
        out.append(BenchInstance(Path(path).stem, read_instance(path, cfg.alphabet), False))
    for n in cfg.ns:
        for frac in cfg.arc_fractions:
            n_arcs = int(round(n * frac))
            for k in range(cfg.count):
                iid = f"n{n}_a{n_arcs}_{k:02d}"
                gen = GeneratorConfig(n, n_arcs, seed=derive_seed(cfg.seed, iid, "instance"))
                out.append(BenchInstance(iid, generate_instance(gen), True))
    return out


@dataclass(frozen=True)
class _Task:
    item: BenchInstance
    algorithm: str
    rep: int
    seed: int
    params: Params
    time_limit: float | None
    max_iterations: int | None
    timing: bool


def _run_task(task: _Task) -> dict:
    inst = task.item.instance
    row = {
        "instance_id": task.item.instance_id,
        "n": len(inst.x),
        "n_arcs": len(inst.x.arcs),
        "algorithm": task.algorithm,
        "seed": task.seed,
    }
    try:
        if task.algorithm == "heuristic":
            res = run_heuristic(inst, task.params.t_max, node_limit=task.params.mis_node_limit)
        else:
            run = run_hyb_ea if task.algorithm == "hybea" else run_ms_heur
            res = run(inst, task.params, task.time_limit, random.Random(task.seed), max_iterations=task.max_iterations)
    except Exception:  # recorded as an empty row; the harness keeps going
        log.exception("run failed: %s %s rep %d", task.item.instance_id, task.algorithm, task.rep)
        row.update(best_value="", time_to_best_s="", total_time_s="", iterations="", proven_optimal_merges="")
        return row
    row.update(
        best_value=res.best_value,
        time_to_best_s=f"{res.time_to_best:.4f}" if task.timing else "",
        total_time_s=f"{res.total_time:.4f}" if task.timing else "",
        iterations=res.iterations,
        proven_optimal_merges=res.proven_optimal_merges,
    )
    return row


def _tasks(cfg: BenchConfig, items: Iterable[BenchInstance]) -> list[_Task]:
    tasks = []
    for item in items:
        n = len(item.instance.x)
        params = replace(default_params_for(max(n, 1)), **cfg.overrides)
        if cfg.mis_node_limit is not None:
            params = replace(params, mis_node_limit=cfg.mis_node_limit)
        if cfg.deterministic:
            params = replace(params, t_max=None)
            time_limit = None
        elif cfg.time_limit is not None:
            time_limit = cfg.time_limit
        else:
            time_limit = n / 10 if item.generated else FILE_TIME_LIMIT
        for alg in cfg.algorithms:
            for rep in range(cfg.reps):
                tasks.append(
                    _Task(
                        item, alg, rep, derive_seed(cfg.seed, item.instance_id, alg, rep),
                        params, time_limit, cfg.max_iterations, not cfg.deterministic,
                    )
                )
    return tasks


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values)


def aggregate_rows(rows: Sequence[dict]) -> list[dict]:
    """One mean row per (n, n_arcs, algorithm) cell, in first-seen order."""
    cells: dict[tuple, list[dict]] = {}
    for r in rows:
        if str(r["instance_id"]).startswith(MEAN_PREFIX) or r["best_value"] in ("", None):
            continue
        cells.setdefault((int(r["n"]), int(r["n_arcs"]), r["algorithm"]), []).append(r)
    out = []
    for (n, n_arcs, alg), group in cells.items():

        def col(name, fmt):
            vals = [r[name] for r in group]
            if any(v in ("", None) for v in vals):
                return ""
            return format(_mean(float(v) for v in vals), fmt)

        out.append(
            {
                "instance_id": f"{MEAN_PREFIX}n{n}:a{n_arcs}",
                "n": n,
                "n_arcs": n_arcs,
                "algorithm": alg,
                "seed": "",
                "best_value": col("best_value", ".4f"),
                "time_to_best_s": col("time_to_best_s", ".4f"),
                "total_time_s": col("total_time_s", ".4f"),
                "iterations": col("iterations", ".2f"),
                "proven_optimal_merges": col("proven_optimal_merges", ".2f"),
            }
        )
    return out


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: r[k] for k in CSV_COLUMNS})
    return buf.getvalue()


def read_rows(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        missing = set(CSV_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise BenchError(f"{path}: missing columns {sorted(missing)}")
        return list(reader)


def run_benchmark(cfg: BenchConfig, progress=None) -> list[dict]:
    """Run every (instance, algorithm, repetition); returns raw rows then mean rows.

    Writes the CSV to ``cfg.out`` when set.
    """
    tasks = _tasks(cfg, iter_instances(cfg))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = []
            for row in pool.map(_run_task, tasks):
                rows.append(row)
                if progress:
                    progress(row)
    else:
        rows = []
        for t in tasks:
            row = _run_task(t)
            rows.append(row)
            if progress:
                progress(row)
    rows += aggregate_rows(rows)
    if cfg.out:
        Path(cfg.out).write_text(rows_to_csv(rows), encoding="utf-8")
    return rows


@dataclass
class CellSummary:
    n: int
    n_arcs: int
    means: dict  # algorithm -> mean best value
    mean_times: dict  # algorithm -> mean time to best (None without timing)
    instances: int
    # hybea vs msheur; None when the cell lacks those algorithms
    improvement_of_means: float | None = None
    instance_improvements: list = field(default_factory=list)  # [(instance_id, pct)]

    @property
    def mean_instance_improvement(self) -> float | None:
        if not self.instance_improvements:
            return None
        return _mean(p for _, p in self.instance_improvements)


def improvement_pct(hybea: float, msheur: float) -> float:
    if msheur == 0:
        return 0.0 if hybea == 0 else math.inf
    return 100.0 * (hybea - msheur) / msheur


def summarize(rows: Iterable[dict]) -> list[CellSummary]:
    """Per-cell means and Hyb-EA over Ms-Heur improvements, from raw CSV rows."""
    per: dict[tuple, dict[str, dict[str, list]]] = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
    times: dict[tuple, dict[str, list]] = defaultdict(lambda: defaultdict(list))
    for r in rows:
        if str(r["instance_id"]).startswith(MEAN_PREFIX) or r["best_value"] in ("", None):
            continue
        cell = (int(r["n"]), int(r["n_arcs"]))
        per[cell][r["instance_id"]][r["algorithm"]].append(float(r["best_value"]))
        if r.get("time_to_best_s") not in ("", None):
            times[cell][r["algorithm"]].append(float(r["time_to_best_s"]))
    out = []
    for cell in per:
        by_inst = per[cell]
        algs = sorted({a for d in by_inst.values() for a in d}, key=lambda a: ALGORITHMS.index(a) if a in ALGORITHMS else 99)
        means = {a: _mean(v for d in by_inst.values() for v in d.get(a, ())) for a in algs}
        mean_times = {a: (_mean(times[cell][a]) if times[cell].get(a) else None) for a in algs}
        s = CellSummary(cell[0], cell[1], means, mean_times, len(by_inst))
        if "hybea" in algs or "msheur" in algs:
            for iid, d in by_inst.items():
                if not d.get("hybea") or not d.get("msheur"):
                    missing = "msheur" if d.get("hybea") else "hybea"
                    raise BenchError(f"instance {iid} has no {missing} rows to compare against")
                s.instance_improvements.append((iid, improvement_pct(_mean(d["hybea"]), _mean(d["msheur"]))))
            s.improvement_of_means = improvement_pct(means["hybea"], means["msheur"])
        out.append(s)
    return out


def format_summary(cells: Sequence[CellSummary]) -> str:
    algs = [a for a in ALGORITHMS if any(a in c.means for c in cells)]
    header = ["n", "arcs"]
    for a in algs:
        header += [a, "time"]
    header += ["impr%"]
    lines = [header]
    for c in cells:
        row = [str(c.n), str(c.n_arcs)]
        for a in algs:
            m = c.means.get(a)
            t = c.mean_times.get(a)
            row += ["-" if m is None else f"{m:.2f}", "-" if t is None else f"{t:.2f}"]
        imp = c.mean_instance_improvement
        row.append("-" if imp is None else f"{imp:+.2f}")
        lines.append(row)
    widths = [max(len(r[k]) for r in lines) for k in range(len(header))]
    return "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in lines) + "\n"


def improvements_csv(cells: Sequence[CellSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance_id", "n", "n_arcs", "improvement_pct"])
    for c in cells:
        for iid, pct in c.instance_improvements:
            w.writerow([iid, c.n, c.n_arcs, f"{pct:.4f}"])
    return buf.getvalue()


def print_progress(row: dict, stream=sys.stderr) -> None:
    print(f"{row['instance_id']:>16} {row['algorithm']:>9} -> {row['best_value']}", file=stream, flush=True)
