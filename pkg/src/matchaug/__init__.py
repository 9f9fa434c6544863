"""Matching augmentation: a 5/3-approximation with exact checkers and generators."""

from .errors import InvariantBreach
from .graph import Edge, EdgeSubgraph, MapInstance, ValidationError, check_instance, validate_instance
from .pipeline import (SolveReport, Verdict, format_instance, parse_instance, ratio_report, read_instance,
                       solve, verify)
from .preprocess import ApproxConfig

__all__ = [
    "ApproxConfig", "Edge", "EdgeSubgraph", "InvariantBreach", "MapInstance", "SolveReport",
    "ValidationError", "Verdict", "check_instance", "format_instance", "parse_instance",
    "ratio_report", "read_instance", "solve", "validate_instance", "verify",
]
