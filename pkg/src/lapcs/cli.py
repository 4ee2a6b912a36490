"""Command line entry point: ``lapcs generate|solve|bench|summarize``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import bench
from .instances import (
    REAL_INSTANCES,
    GeneratorConfig,
    InstanceFormatError,
    check_real_instance,
    generate_instance,
    read_instance,
    serialize_instance,
)
from .model import InputError, decode_subsequence
from .solvers import run_heuristic, run_hyb_ea, run_ms_heur

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> float:
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("arc fraction must be non-negative")
    return value


def _positive(kind):
    def conv(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text}")
        return value

    return conv


def _add_param_flags(p):
    g = p.add_argument_group("algorithm parameters (default: tuned values for the sequence length)")
    g.add_argument("--n-sols", type=_positive(int))
    g.add_argument("--d-rate", type=float)
    g.add_argument("--l-size", type=_positive(int))
    g.add_argument("--t-max", type=_positive(float), help="seconds per MIS call")
    g.add_argument("--iterations", type=_positive(int), help="cap on constructions (msheur) or merges (hybea)")
    g.add_argument("--mis-node-limit", type=_positive(int), help="search-node cap per MIS call, for reproducible runs")


def _overrides(args) -> dict:
    names = ("n_sols", "d_rate", "l_size", "t_max")
    return {k: getattr(args, k) for k in names if getattr(args, k) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lapcs", description="Longest arc-preserving common subsequence solvers.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write random instances")
    p.add_argument("--n", type=_positive(int), required=True)
    arcs = p.add_mutually_exclusive_group()
    arcs.add_argument("--arc-fraction", type=_fraction, default=0.1, help="arcs per sequence as a fraction of n (e.g. 1/10)")
    arcs.add_argument("--n-arcs", type=int)
    p.add_argument("--count", type=_positive(int), default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", default="ACGU")
    p.add_argument("--out", help="output directory (stdout when omitted and --count is 1)")

    p = sub.add_parser("solve", help="run one algorithm on one instance file")
    p.add_argument("instance")
    p.add_argument("--mode", choices=("heuristic", "msheur", "hybea"), default="hybea")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=_positive(float), help=f"seconds (default {bench.FILE_TIME_LIMIT:g})")
    p.add_argument("--alphabet")
    p.add_argument("--check-real", choices=sorted(REAL_INSTANCES), help="verify lengths/arc counts of a transcribed real instance")
    p.add_argument("--out", help="write the solution as 'i j' lines")
    _add_param_flags(p)

    p = sub.add_parser("bench", help="run the experimental protocol and write CSV")
    p.add_argument("--mode", choices=("heuristic", "msheur", "hybea", "all"), default="all")
    p.add_argument("--files", nargs="+", default=[], help="instance files")
    p.add_argument("--n", nargs="+", type=_positive(int), default=[], help="generated lengths")
    p.add_argument("--arc-fraction", nargs="+", type=_fraction, default=[], help="e.g. 1/10 1/5 1/2")
    p.add_argument("--count", type=_positive(int), default=30, help="generated instances per cell")
    p.add_argument("--reps", type=_positive(int), default=1)
    p.add_argument("--time-limit", type=_positive(float), help="seconds; default n/10 (generated) or 30 (files)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="results.csv")
    p.add_argument("--jobs", type=_positive(int), default=1)
    p.add_argument("--deterministic", action="store_true", help="no wall-clock budgets; needs --iterations and --mis-node-limit")
    p.add_argument("--alphabet")
    p.add_argument("--quiet", action="store_true")
    _add_param_flags(p)

    p = sub.add_parser("summarize", help="per-cell means and improvement of hybea over msheur")
    p.add_argument("csv")
    p.add_argument("--out", help="write per-instance improvements as CSV")
    return parser


def cmd_generate(args) -> int:
    n_arcs = args.n_arcs if args.n_arcs is not None else int(round(args.n * args.arc_fraction))
    if args.out is None and args.count != 1:
        raise UsageError("--out is required when --count > 1")
    for k in range(args.count):
        iid = f"n{args.n}_a{n_arcs}_{k:02d}"
        try:
            cfg = GeneratorConfig(args.n, n_arcs, args.alphabet, bench.derive_seed(args.seed, iid, "instance"))
        except ValueError as e:
            raise UsageError(str(e)) from None
        text = serialize_instance(generate_instance(cfg))
        if args.out is None:
            sys.stdout.write(text)
        else:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{iid}.txt").write_text(text, encoding="utf-8")
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(args.instance, args.alphabet)
    if args.check_real:
        problems = check_real_instance(args.check_real, inst)
        for msg in problems:
            print(f"{args.check_real}: {msg}", file=sys.stderr)
        if problems:
            return EXIT_DATA
    params = bench.default_params_for(max(len(inst.x), 1))
    try:
        params = replace(params, **_overrides(args))
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.mis_node_limit is not None:
        params = replace(params, mis_node_limit=args.mis_node_limit)
    time_limit = args.time_limit if args.time_limit is not None else bench.FILE_TIME_LIMIT
    if args.mode == "heuristic":
        res = run_heuristic(inst, params.t_max, node_limit=params.mis_node_limit)
    else:
        run = run_hyb_ea if args.mode == "hybea" else run_ms_heur
        res = run(inst, params, time_limit, random.Random(args.seed), max_iterations=args.iterations)
    sol = sorted(res.best)
    print(f"algorithm      {res.algorithm}")
    print(f"best_value     {res.best_value}")
    print(f"time_to_best_s {res.time_to_best:.3f}")
    print(f"total_time_s   {res.total_time:.3f}")
    print(f"iterations     {res.iterations}")
    print(f"subsequence    {decode_subsequence(sol, inst)}")
    if args.out:
        Path(args.out).write_text("".join(f"{i} {j}\n" for i, j in sol), encoding="utf-8")
    return 0


def cmd_bench(args) -> int:
    try:
        cfg = bench.BenchConfig(
            mode=args.mode,
            files=args.files,
            ns=args.n,
            arc_fractions=args.arc_fraction,
            count=args.count,
            reps=args.reps,
            time_limit=args.time_limit,
            overrides=_overrides(args),
            seed=args.seed,
            out=args.out,
            jobs=args.jobs,
            max_iterations=args.iterations,
            mis_node_limit=args.mis_node_limit,
            deterministic=args.deterministic,
            alphabet=args.alphabet,
        )
        replace(bench.default_params_for(100), **cfg.overrides)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rows = bench.run_benchmark(cfg, progress=None if args.quiet else bench.print_progress)
    sys.stdout.write(bench.format_summary(bench.summarize(rows)))
    return 0


def cmd_summarize(args) -> int:
    cells = bench.summarize(bench.read_rows(args.csv))
    sys.stdout.write(bench.format_summary(cells))
    if args.out:
        Path(args.out).write_text(bench.improvements_csv(cells), encoding="utf-8")
    return 0


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "bench": cmd_bench, "summarize": cmd_summarize}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"lapcs: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InstanceFormatError, InputError, bench.BenchError, OSError) as e:
        print(f"lapcs: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
