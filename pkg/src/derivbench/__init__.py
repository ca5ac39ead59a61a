"""Exact workbench for extended derivations of polynomial rings and their isotropy groups."""

__version__ = "0.1.0"

from .deriv import DegreeCap, Derivation, ExtensionChain, apply, extend, restricts_to
from .poly import NEG_INF, Polynomial, degree_in, partial, substitute, top_monomials, total_degree

__all__ = [
    "NEG_INF",
    "DegreeCap",
    "Derivation",
    "ExtensionChain",
    "Polynomial",
    "apply",
    "degree_in",
    "extend",
    "partial",
    "restricts_to",
    "substitute",
    "top_monomials",
    "total_degree",
]
