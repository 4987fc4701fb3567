"""Automorphic equivalence in free groups by Whitehead moves, with fast paths for typical words."""

from .automorphisms import (
    Conjugation,
    Relabeling,
    SecondKind,
    WhiteheadGraph,
    apply_automorphism,
    enumerate_automorphisms,
    inner,
    is_inner,
    length_change,
    whitehead_graph,
)
from .classify import (
    EquivalenceDecision,
    StabilizerReport,
    WitnessChain,
    are_aut_equivalent,
    default_epsilon,
    frequency_criterion,
    is_strictly_minimal,
    is_ts,
    is_z,
    minimize,
    orbit_level_set,
    stabilizer_report,
)
from .words import (
    Alphabet,
    Letter,
    WordError,
    canonical_rotation,
    count_words,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_conjugate,
    is_proper_power,
    parse_word,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Conjugation",
    "EquivalenceDecision",
    "Letter",
    "Relabeling",
    "SecondKind",
    "StabilizerReport",
    "WhiteheadGraph",
    "WitnessChain",
    "WordError",
    "apply_automorphism",
    "are_aut_equivalent",
    "canonical_rotation",
    "count_words",
    "cyclic_reduce",
    "default_epsilon",
    "enumerate_automorphisms",
    "free_reduce",
    "frequency_criterion",
    "inner",
    "inverse",
    "is_conjugate",
    "is_inner",
    "is_proper_power",
    "is_strictly_minimal",
    "is_ts",
    "is_z",
    "length_change",
    "minimize",
    "orbit_level_set",
    "parse_word",
    "stabilizer_report",
    "whitehead_graph",
]
