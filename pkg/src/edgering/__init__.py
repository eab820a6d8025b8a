"""Toric ideals, initial ideals, Betti numbers and canonical modules of compact graphs."""

from .betti import BettiTable, MonomialIdeal, graded_betti_recursion
from .classify import CompactClass, EdgeVar, NotCompact, classify, generate, lex_order
from .graph import Graph, parse_graph, prune_leaves
from .toric import Binomial, Monomial, initial_ideal, universal_groebner_basis

__all__ = [
    "BettiTable",
    "Binomial",
    "CompactClass",
    "EdgeVar",
    "Graph",
    "Monomial",
    "MonomialIdeal",
    "NotCompact",
    "classify",
    "generate",
    "graded_betti_recursion",
    "initial_ideal",
    "lex_order",
    "parse_graph",
    "prune_leaves",
    "universal_groebner_basis",
]
