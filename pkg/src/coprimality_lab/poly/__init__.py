"""Polynomial kernel: sparse multivariate integer polynomials and mod-p helpers."""

from .multipoly import MultiPoly, add, content, evaluate, exact_div, mul, primitive_part, specialize
from .vartable import VarTable

__all__ = [
    "MultiPoly",
    "VarTable",
    "add",
    "content",
    "evaluate",
    "exact_div",
    "mul",
    "primitive_part",
    "specialize",
]
