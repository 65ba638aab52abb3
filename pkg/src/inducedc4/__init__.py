"""Deterministic combinatorial detection of induced 4-cycles.

Public surface re-exported here; see README for the CLI and file formats.
"""

from .decomposition import DecompConfig
from .detector import DetectionReport, detect, find
from .errors import ContractViolation, ParseError, SpecError
from .generate import GraphSpec, format_spec, generate, parse_spec, planted_witness
from .graph import (
    C4Witness,
    Graph,
    canonical_witness,
    dump_graph,
    load_graph,
    naive_detect,
    oracle_detect,
    verify_witness,
)

__all__ = [
    "C4Witness",
    "ContractViolation",
    "DecompConfig",
    "DetectionReport",
    "Graph",
    "GraphSpec",
    "ParseError",
    "SpecError",
    "canonical_witness",
    "detect",
    "dump_graph",
    "find",
    "format_spec",
    "generate",
    "load_graph",
    "naive_detect",
    "oracle_detect",
    "parse_spec",
    "planted_witness",
    "verify_witness",
]

__version__ = "0.1.0"
