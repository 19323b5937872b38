"""Uniform access to the three value shapes the analysis layer accepts."""

from __future__ import annotations

from ..errors import UsageError
from ..poly import MultiPoly
from ..ring import FactorBasis, Factored, RationalFunction


def as_value(f):
    if isinstance(f, (Factored, RationalFunction)):
        return f
    if isinstance(f, MultiPoly):
        return RationalFunction.from_poly(f)
    raise UsageError(f"expected a polynomial or rational function, got {type(f).__name__}")


def labelled_items(source, select=None) -> list:
    """(label, value) pairs from a TermSequence, LatticeWindow, mapping or list."""
    if hasattr(source, "items") and callable(source.items):
        items = list(source.items())
    else:
        items = list(source)
    if select is not None:
        keep = set(select)
        items = [(k, v) for k, v in items if k in keep]
    return [(k, as_value(v)) for k, v in items]


def common_factored(values) -> list[Factored]:
    """The values as Factored over one basis (reusing a shared basis when there is one)."""
    bases = {id(v.basis) for v in values if isinstance(v, Factored)}
    if len(bases) == 1 and all(isinstance(v, Factored) for v in values):
        return list(values)
    if not values:
        return []
    vt = values[0].vars
    if any(v.vars != vt for v in values):
        raise UsageError("values live over different variable tables")
    basis = FactorBasis(vt)
    out = []
    for v in values:
        rf = v.to_rational() if isinstance(v, Factored) else v
        out.append(Factored.from_rational(basis, rf))
    return out


def label_distance(a, b) -> int:
    if isinstance(a, tuple):
        return max(abs(x - y) for x, y in zip(a, b))
    return abs(a - b)
