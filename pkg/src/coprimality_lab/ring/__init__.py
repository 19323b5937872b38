"""Reduced rational functions, factored values, units and Laurent forms."""

from .factored import FactorBasis, Factored, factored_sum
from .laurent import LaurentPoly, UnitCofactor, is_laurent, normalize, to_laurent
from .rational import RationalFunction, reduce
from .units import UnitSpec, UnitSplit, is_unit, split_units

__all__ = [
    "FactorBasis",
    "Factored",
    "factored_sum",
    "LaurentPoly",
    "RationalFunction",
    "UnitCofactor",
    "UnitSpec",
    "UnitSplit",
    "is_laurent",
    "is_unit",
    "normalize",
    "reduce",
    "split_units",
    "to_laurent",
]
