"""Co-primeness of rational functions relative to a unit specification."""

from __future__ import annotations

from dataclasses import dataclass

from ..poly import MultiPoly
from ..poly.gcd import gcd
from ..ring import Factored, UnitSpec, split_units
from ._values import as_value, label_distance

# the fixed order in which the four gcds are inspected
PAIR_ORDER = (("num", "num"), ("num", "den"), ("den", "num"), ("den", "den"))


@dataclass(frozen=True)
class CoprimeVerdict:
    coprime: bool
    witness: MultiPoly | None = None
    pair: str | None = None

    def __bool__(self):
        return self.coprime


def _nonunit_part(h: MultiPoly, u: UnitSpec) -> MultiPoly | None:
    if h.is_constant():
        return None
    rest = split_units(h, u).rest
    return None if rest.is_constant() else rest


def _side(f: Factored, sign: int):
    ex = f.exps
    leaves = {i for i, e in ex.items() if e * sign > 0}
    mono = {i for i, e in enumerate(f.mono) if e * sign > 0}
    return leaves, mono


def _factored_verdict(f: Factored, g: Factored, u: UnitSpec) -> CoprimeVerdict:
    basis = f.basis
    names = f.vars.names
    sides = {"num": 1, "den": -1}
    for a, b in PAIR_ORDER:
        la, ma = _side(f, sides[a])
        lb, mb = _side(g, sides[b])
        for i in sorted(la & lb):
            w = _nonunit_part(basis.poly(i), u)
            if w is not None:
                return CoprimeVerdict(False, w, f"{a}-{b}")
        for i in sorted(ma & mb):
            if names[i] not in u.monomial_vars and names[i] not in u.coefficient_vars:
                return CoprimeVerdict(False, MultiPoly.gen(f.vars, names[i]), f"{a}-{b}")
    return CoprimeVerdict(True)


def coprime(f, g, u: UnitSpec) -> CoprimeVerdict:
    """Co-prime iff all four numerator/denominator gcds are units under ``u``.

    The witness is the unit-free part of the first non-unit gcd, inspected
    in the order num-num, num-den, den-num, den-den.
    """
    f, g = as_value(f), as_value(g)
    if isinstance(f, Factored) and isinstance(g, Factored) and f.basis is g.basis:
        return _factored_verdict(f, g, u)
    rf = f.to_rational() if isinstance(f, Factored) else f
    rg = g.to_rational() if isinstance(g, Factored) else g
    if rf.vars != rg.vars:
        rg = rg.lift(rf.vars)
    parts_f = {"num": rf.num, "den": rf.den}
    parts_g = {"num": rg.num, "den": rg.den}
    for a, b in PAIR_ORDER:
        p, q = parts_f[a], parts_g[b]
        if not p or not q:
            continue
        w = _nonunit_part(gcd(p, q), u)
        if w is not None:
            return CoprimeVerdict(False, w, f"{a}-{b}")
    return CoprimeVerdict(True)


def separated(a, b, gap: int = 2) -> bool:
    """Labels at distance >= gap (Chebyshev distance for lattice cells)."""
    return label_distance(a, b) >= gap


def coprime_pairs(items, u: UnitSpec, keep=None) -> dict:
    """Verdicts for every unordered pair of labelled values, keyed by (label, label).

    ``keep(a, b)`` filters the pairs; results are ordered by label.
    """
    items = sorted(items, key=lambda kv: kv[0])
    out = {}
    for i, (ka, va) in enumerate(items):
        for kb, vb in items[i + 1:]:
            if keep is not None and not keep(ka, kb):
                continue
            out[ka, kb] = coprime(va, vb, u)
    return out
