"""Solvers for the longest arc-preserving common subsequence problem."""
from .conflict import ConflictGraph, build_conflict_graph, in_conflict
from .construct import ConstructionParams, OccurrenceIndex, generate_random_solution, weight
from .instances import GeneratorConfig, generate_instance, parse_instance, serialize_instance
from .lcs import lcs_length, lcs_traceback
from .mis import MisResult, greedy_mis, solve_mis
from .model import (
    ArcAnnotatedSequence,
    ArcStructureClass,
    InputError,
    Instance,
    ValidityReport,
    build_assignment_universe,
    classify_arc_structure,
    decode_subsequence,
    is_valid_solution,
)
from .repair import repair
from .solvers import Params, RunResult, run_heuristic, run_hyb_ea, run_ms_heur

__version__ = "0.1.0"
