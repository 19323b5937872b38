"""Laurent normal forms: sign times a signed monomial times a core polynomial."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..errors import NotLaurent, UsageError
from ..poly import MultiPoly
from .factored import Factored
from .rational import RationalFunction
from .units import UnitSpec, is_unit, split_units


@dataclass(frozen=True)
class LaurentPoly:
    """value = sign * prod(var_i ** unit_exps[i]) * core.

    ``core`` is divisible by no variable and has a positive leading
    coefficient.
    """

    sign: int
    unit_exps: tuple
    core: MultiPoly

    @property
    def vars(self):
        return self.core.vars

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        v = Fraction(self.sign) * self.core.evaluate(point)
        for name, e in zip(self.vars.names, self.unit_exps):
            if e:
                v *= Fraction(point[name]) ** e
        return v

    def to_rational(self) -> RationalFunction:
        num = self.core.shift_monomial([max(e, 0) for e in self.unit_exps]) * self.sign
        den = MultiPoly.one(self.vars).shift_monomial([max(-e, 0) for e in self.unit_exps])
        return RationalFunction(num, den)

    def unit_text(self) -> str:
        parts = []
        for name, e in zip(self.vars.names, self.unit_exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        body = "*".join(parts) or "1"
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True)
class UnitCofactor:
    """Units divided out of a Laurent form but kept symbolic.

    The full value is ``laurent / coefficient_part * prod(extra_units[i] ** extra_exps[i])``.
    """

    coefficient_part: MultiPoly
    extra_exps: dict = field(default_factory=dict)


def normalize(f: MultiPoly) -> LaurentPoly:
    if not f:
        raise UsageError("cannot normalize the zero polynomial")
    mono = f.monomial_content()
    core = f.unshift_monomial(mono)
    sign = 1
    if core.leading_coefficient() < 0:
        sign, core = -1, -core
    return LaurentPoly(sign, mono, core)


def _as_rational(f) -> RationalFunction:
    if isinstance(f, Factored):
        return f.to_rational()
    if isinstance(f, MultiPoly):
        return RationalFunction.from_poly(f)
    return f


def is_laurent(f, u: UnitSpec) -> bool:
    """True iff the reduced denominator of ``f`` is a unit under ``u``."""
    if isinstance(f, Factored):
        for name, m in zip(f.vars.names, f.mono):
            if m < 0 and name not in u.monomial_vars and name not in u.coefficient_vars:
                return False
        return all(is_unit(p, u) for p, _ in f.denominator_factors())
    f = _as_rational(f)
    return is_unit(f.den, u)


def to_laurent(f, u: UnitSpec) -> tuple[LaurentPoly, UnitCofactor]:
    f = _as_rational(f)
    if not f.num:
        raise UsageError("the zero function has no Laurent form")
    split = split_units(f.den, u)
    if not split.rest.is_constant():
        raise NotLaurent(f"denominator factor {split.rest} is not a unit")
    lp = normalize(f.num)
    cp = split.coefficient_part
    if cp.leading_coefficient() < 0:
        cp = -cp
        lp = LaurentPoly(-lp.sign, lp.unit_exps, lp.core)
    exps = tuple(a - b for a, b in zip(lp.unit_exps, split.monomial))
    return LaurentPoly(lp.sign, exps, lp.core), UnitCofactor(cp, {i: -k for i, k in split.extra_exps.items()})
