"""Unitarity decision and simulation for one-dimensional quantum cellular automata."""

from .columns import column_norm, columns_orthogonal
from .core import (
    Configuration,
    LocalRule,
    RuleError,
    Superposition,
    SymbolTable,
    Tolerances,
    interval_domain,
    make_rule,
    normalize_images,
    validate_rule,
    word_at,
)
from .decision import UnitarityReport, Verdict, decide_unitarity
from .reduce import build_a_tensor, reduce_neighborhood
from .rulefile import format_rule, parse_rule_file
from .simulate import apply_global, inner_product, overlap_after_step

__all__ = [
    "Configuration",
    "LocalRule",
    "RuleError",
    "Superposition",
    "SymbolTable",
    "Tolerances",
    "UnitarityReport",
    "Verdict",
    "apply_global",
    "build_a_tensor",
    "column_norm",
    "columns_orthogonal",
    "decide_unitarity",
    "format_rule",
    "inner_product",
    "interval_domain",
    "make_rule",
    "normalize_images",
    "overlap_after_step",
    "parse_rule_file",
    "reduce_neighborhood",
    "validate_rule",
    "word_at",
]
