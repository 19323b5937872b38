"""What counts as a unit in a localized polynomial ring."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UsageError
from ..poly import MultiPoly
from ..poly.gcd import gcd_many, try_divide
from ..poly.vartable import FIELD_MASK


@dataclass(frozen=True)
class UnitSpec:
    """Units are ±monomials in ``monomial_vars`` times factors that involve
    only ``coefficient_vars`` (constants included) times powers of the
    declared ``extra_units``."""

    monomial_vars: frozenset = frozenset()
    coefficient_vars: frozenset = frozenset()
    extra_units: tuple = ()
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "monomial_vars", frozenset(self.monomial_vars))
        object.__setattr__(self, "coefficient_vars", frozenset(self.coefficient_vars))
        object.__setattr__(self, "extra_units", tuple(self.extra_units))
        for e in self.extra_units:
            if not isinstance(e, MultiPoly) or e.is_constant() or e.is_monomial():
                raise UsageError("extra units must be non-monomial polynomials")

    def with_extra(self, *polys: MultiPoly, name: str | None = None) -> "UnitSpec":
        return UnitSpec(self.monomial_vars, self.coefficient_vars, self.extra_units + polys, name or self.name)


@dataclass
class UnitSplit:
    """f = sign * monomial * coefficient_part * prod(extra_units[i]^k_i) * rest."""

    monomial: tuple
    coefficient_part: MultiPoly
    extra_exps: dict = field(default_factory=dict)
    rest: MultiPoly | None = None


def _extras_for(u: UnitSpec, vars):
    """Extra units re-expressed over ``vars``; those using foreign variables cannot divide."""
    out = []
    for e in u.extra_units:
        if e.vars != vars:
            if not set(e.vars.names[i] for i in e.used_vars()) <= set(vars.names):
                out.append(None)
                continue
            e = e.lift(vars) if set(e.vars.names) <= set(vars.names) else _restrict(e, vars)
        out.append(e)
    return out


def _restrict(e: MultiPoly, vars) -> MultiPoly:
    keep = [e.vars.names[i] for i in e.used_vars()]
    from ..poly import VarTable

    small = VarTable(keep)
    terms = {tuple(exps[e.vars.position(n)] for n in keep): c for exps, c in e.items()}
    return MultiPoly.from_terms(small, terms).lift(vars)


def split_units(f: MultiPoly, u: UnitSpec) -> UnitSplit:
    """Strip units from ``f`` in the fixed order: variables, coefficient-only
    content, then extra units by index.  ``rest`` is what remains (positive
    leading coefficient)."""
    if not f:
        raise UsageError("zero has no unit decomposition")
    vt = f.vars
    mc = f.monomial_content()
    mono = tuple(e if vt.names[i] in u.monomial_vars else 0 for i, e in enumerate(mc))
    g = f.unshift_monomial(mono)
    coeff_idx = [i for i, n in enumerate(vt.names) if n in u.coefficient_vars]
    other_idx = [i for i in range(vt.arity) if i not in coeff_idx]
    coeff_part = _coefficient_content(g, coeff_idx, other_idx)
    if not coeff_part.is_constant() or coeff_part.constant_value() != 1:
        g = g.exact_div(coeff_part)
    exps = {}
    for idx, e in enumerate(_extras_for(u, vt)):
        if e is None:
            continue
        k = 0
        while not g.is_constant():
            q = try_divide(g, e)
            if q is None:
                break
            g = q
            k += 1
        if k:
            exps[idx] = k
    if g.is_constant():
        # constants are coefficient-only factors
        c = g.constant_value()
        coeff_part = coeff_part * c
        g = MultiPoly.one(vt)
    return UnitSplit(mono, coeff_part, exps, g.normalized())


def _coefficient_content(g: MultiPoly, coeff_idx, other_idx) -> MultiPoly:
    """Gcd of the coefficients of g viewed as a polynomial in the non-coefficient variables."""
    vt = g.vars
    if not other_idx or not any(g.degrees()[i] for i in other_idx):
        return g
    shifts = vt._shifts
    groups: dict[tuple, dict] = {}
    keep_mask = 0
    for i in coeff_idx:
        keep_mask |= FIELD_MASK << shifts[i]
    for k, v in g._t.items():
        okey = tuple((k >> shifts[i]) & FIELD_MASK for i in other_idx)
        ck = k & keep_mask
        d = sum((ck >> shifts[i]) & FIELD_MASK for i in coeff_idx)
        groups.setdefault(okey, {})[ck | (d << vt._total_shift)] = v
    polys = [MultiPoly(vt, t) for t in groups.values()]
    if any(p.is_constant() for p in polys):
        import math

        c = 0
        for p in polys:
            c = math.gcd(c, p.content())
        return MultiPoly.constant(vt, c)
    return gcd_many(polys)


def is_unit(f: MultiPoly, u: UnitSpec) -> bool:
    if not f:
        raise UsageError("is_unit of the zero polynomial")
    return split_units(f, u).rest.is_constant()
