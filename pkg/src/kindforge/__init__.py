"""Kind and multiplicity inference for a calculus with context-free session types."""

from .driver import (
    AnnotationEntry,
    InferenceResult,
    RunSummary,
    infer_file,
    infer_source,
    run_corpus,
    strip_annotations,
)
from .parser import parse_expr, parse_kind, parse_program, parse_type
from .solver import Solution, SolverConfig, brute_force_solve, solve
from .syntax import FreshSupply, pretty_expr, pretty_kind, pretty_program, pretty_type

__all__ = [
    "AnnotationEntry",
    "FreshSupply",
    "InferenceResult",
    "RunSummary",
    "Solution",
    "SolverConfig",
    "brute_force_solve",
    "infer_file",
    "infer_source",
    "parse_expr",
    "parse_kind",
    "parse_program",
    "parse_type",
    "pretty_expr",
    "pretty_kind",
    "pretty_program",
    "pretty_type",
    "run_corpus",
    "solve",
    "strip_annotations",
]

__version__ = "0.1.0"
