"""One-dimensional recurrences: parsing, evolution and the builtin maps."""

from .builtins import BUILTINS, get_builtin, nonqrt3, qrt2, somos4
from .evolve import TermSequence, evolve, numeric_evolve
from .expr import parse_poly
from .somos import somos4_backward, somos_to_qrt, substitute_monomials
from .spec import RecurrenceSpec, parse_spec

__all__ = [
    "BUILTINS",
    "RecurrenceSpec",
    "TermSequence",
    "evolve",
    "get_builtin",
    "nonqrt3",
    "numeric_evolve",
    "parse_poly",
    "parse_spec",
    "qrt2",
    "somos4",
    "somos4_backward",
    "somos_to_qrt",
    "substitute_monomials",
]
