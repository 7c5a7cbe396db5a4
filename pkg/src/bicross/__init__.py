"""Exact construction and verification of bicrossproduct Hopf algebras over truncated power series."""

from .catalog import build_kappa_poincare, catalog_presentation
from .hopf import BialgebraStructure, solve_antipode, solve_counit
from .ncpoly import Element, Presentation, check_confluence
from .parser import parse_expression

__all__ = [
    "BialgebraStructure",
    "Element",
    "Presentation",
    "build_kappa_poincare",
    "catalog_presentation",
    "check_confluence",
    "parse_expression",
    "solve_antipode",
    "solve_counit",
]
