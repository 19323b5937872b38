"""Signed multiplicity of a polynomial factor in a reduced rational function."""

from __future__ import annotations

from ..errors import UsageError
from ..poly import MultiPoly
from ..poly.gcd import try_divide
from ..ring import Factored
from ._values import as_value


def _check_factor(g: MultiPoly, vars) -> MultiPoly:
    if not isinstance(g, MultiPoly):
        raise UsageError("the factor must be a polynomial")
    if g.vars != vars:
        g = g.lift(vars)
    if not g or g.is_constant():
        raise UsageError("valuation needs a non-constant factor")
    if g.is_monomial():
        raise UsageError("a monomial factor is a unit")
    if any(g.monomial_content()):
        raise UsageError("the factor has a monomial part; strip it first")
    if g.content() != 1:
        raise UsageError("the factor must be primitive")
    return g.normalized()


def _multiplicity(f: MultiPoly, g: MultiPoly) -> int:
    k = 0
    while True:
        q = try_divide(f, g)
        if q is None:
            return k
        f = q
        k += 1


def valuation(f, g: MultiPoly) -> int:
    """ord_g(f): positive when g divides the numerator, negative for the denominator."""
    f = as_value(f)
    g = _check_factor(g, f.vars)
    if not f:
        raise UsageError("the valuation of zero is infinite")
    if isinstance(f, Factored):
        _, _, parts = f.basis.factor(g)
        ex = f.exps
        up = min(max(ex.get(i, 0), 0) // k for i, k in parts.items())
        down = min(max(-ex.get(i, 0), 0) // k for i, k in parts.items())
        return up - down
    return _multiplicity(f.num, g) - _multiplicity(f.den, g)


def valuation_table(source, g: MultiPoly) -> dict:
    """label -> ord_g for every term of a sequence or lattice window."""
    items = source.items() if hasattr(source, "items") else source
    return {k: valuation(v, g) for k, v in items}
