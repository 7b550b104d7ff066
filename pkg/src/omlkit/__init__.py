"""Finite orthomodular lattices: Greechie diagrams, equation checking,
exact state LPs, the Godowski scan and Mayet-Godowski equation synthesis."""

from .checker import Verdict, check_equation, evaluate_term
from .corpus import ENTRIES, CorpusEntry, UnknownCorpusName, corpus_get
from .families import build_family, parse_family_spec
from .godp import GoScanResult, go_batch, go_scan
from .greechie import GreechieDiagram, GreechieParseError, parse_diagram, parse_file, serialize
from .lattice import OmlLattice, build_oml
from .mge import CondensedStateEquation, MgEquation, condensed_to_mge, mge_isomorphic, parse_condensed
from .mgegen import balance_and_emit, build_condensed, generate_mge, relax_blocks
from .ratlp import LpOutcome, RationalLP, solve
from .states import admits_state, measure_expr, strong_state_check, unique_state
from .terms import ConditionalEquation, format_equation, parse_equation, parse_term

__all__ = [
    "CondensedStateEquation", "ConditionalEquation", "CorpusEntry", "ENTRIES", "GoScanResult",
    "GreechieDiagram", "GreechieParseError", "LpOutcome", "MgEquation", "OmlLattice",
    "RationalLP", "UnknownCorpusName", "Verdict", "admits_state", "balance_and_emit",
    "build_condensed", "build_family", "build_oml", "check_equation", "condensed_to_mge",
    "corpus_get", "evaluate_term", "format_equation", "generate_mge", "go_batch", "go_scan",
    "measure_expr", "mge_isomorphic", "parse_condensed", "parse_diagram", "parse_equation",
    "parse_family_spec", "parse_file", "parse_term", "relax_blocks", "serialize", "solve",
    "strong_state_check", "unique_state",
]
