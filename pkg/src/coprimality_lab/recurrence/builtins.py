"""The three maps studied in the project: Somos-4, a QRT map and a non-integrable relative."""

from __future__ import annotations

from ..errors import UsageError
from .spec import RecurrenceSpec, parse_spec

SOMOS4 = "y[n+2] = (y[n+1]*y[n-1] + y[n]^2)/y[n-2]"
QRT2 = "x[n+1] = (x[n] + 1)/(x[n-1]*x[n]^2)"
NONQRT3 = "x[n+1] = (x[n] + 1)/(x[n-1]*x[n]^3)"


def somos4() -> RecurrenceSpec:
    """y1..y4 = a, b, c, d."""
    return parse_spec(SOMOS4, initial_symbols=("a", "b", "c", "d"), initial_index=1, name="somos4")


def qrt2() -> RecurrenceSpec:
    """x0 = u, x1 = t."""
    return parse_spec(QRT2, initial_symbols=("u", "t"), initial_index=0, name="qrt2", variables=("t", "u"))


def nonqrt3() -> RecurrenceSpec:
    """Same initial data as :func:`qrt2`, cubic instead of quadratic."""
    return parse_spec(NONQRT3, initial_symbols=("u", "t"), initial_index=0, name="nonqrt3", variables=("t", "u"))


BUILTINS = {"somos4": somos4, "qrt2": qrt2, "nonqrt3": nonqrt3}


def get_builtin(name: str) -> RecurrenceSpec:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise UsageError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
