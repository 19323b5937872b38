"""Reduced quotients of integer polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import UsageError
from ..poly import MultiPoly
from ..poly.gcd import gcd


class RationalFunction:
    """num/den with gcd(num, den) = 1 and a positive leading coefficient in den.

    Build through :func:`reduce` or the arithmetic operators; the plain
    constructor trusts its arguments.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def from_poly(cls, f: MultiPoly) -> "RationalFunction":
        return cls(f, MultiPoly.one(f.vars))

    @classmethod
    def constant(cls, vars, c) -> "RationalFunction":
        c = Fraction(c)
        return cls(MultiPoly.constant(vars, c.numerator), MultiPoly.constant(vars, c.denominator))

    @classmethod
    def gen(cls, vars, name: str) -> "RationalFunction":
        return cls.from_poly(MultiPoly.gen(vars, name))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_constant() and self.den.constant_value() == 1

    def __eq__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if self.is_polynomial():
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def lift(self, vars) -> "RationalFunction":
        return RationalFunction(self.num.lift(vars), self.den.lift(vars))

    # arithmetic (Henrici-style: gcds of the smaller cross pairs only)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return _mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = _coerce(self, other)
        if other is None:
            return NotImplemented
        return _mul(other, self.inverse())

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        if self.num.leading_coefficient() < 0:
            return RationalFunction(-self.den, -self.num)
        return RationalFunction(self.den, self.num)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise UsageError("integer exponents only")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        return RationalFunction(base.num ** e, base.den ** e)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def degree(self) -> int:
        """max(total degree of num, total degree of den)."""
        return max(self.num.degree() if self.num else 0, self.den.degree())


def _coerce(ref: RationalFunction, other) -> RationalFunction | None:
    if isinstance(other, RationalFunction):
        if other.vars != ref.vars:
            raise UsageError("rational functions live over different variable tables")
        return other
    if isinstance(other, MultiPoly):
        if other.vars != ref.vars:
            raise UsageError("rational functions live over different variable tables")
        return RationalFunction.from_poly(other)
    if isinstance(other, (int, Fraction)):
        return RationalFunction.constant(ref.vars, other)
    return None


def _is_one(f: MultiPoly) -> bool:
    return f.is_constant() and f.constant_value() == 1


def _div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return f if _is_one(g) else f.exact_div(g)


def reduce(num: MultiPoly, den: MultiPoly) -> RationalFunction:
    """Cancel the gcd and make the denominator's leading coefficient positive."""
    if num.vars != den.vars:
        raise UsageError("numerator and denominator live over different variable tables")
    if not den:
        raise UsageError("zero denominator")
    if not num:
        return RationalFunction(num, MultiPoly.one(num.vars))
    g = gcd(num, den)
    if den.leading_coefficient() < 0:
        g = -g
    return RationalFunction(_div(num, g), _div(den, g))


def _mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if not a.num or not b.num:
        return RationalFunction(MultiPoly.zero(a.vars), MultiPoly.one(a.vars))
    g1 = gcd(a.num, b.den)
    g2 = gcd(b.num, a.den)
    num = _div(a.num, g1) * _div(b.num, g2)
    den = _div(a.den, g2) * _div(b.den, g1)
    return RationalFunction(num, den)


def _add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if not a.num:
        return b
    if not b.num:
        return a
    if a.den == b.den:
        t = a.num + b.num
        if _is_one(a.den):
            return RationalFunction(t, a.den)
        return reduce(t, a.den)
    g = gcd(a.den, b.den)
    ad, bd = _div(a.den, g), _div(b.den, g)
    t = a.num * bd + b.num * ad
    if not t:
        return RationalFunction(t, MultiPoly.one(a.vars))
    if _is_one(g):
        return RationalFunction(t, ad * b.den)
    g2 = gcd(t, g)
    return RationalFunction(_div(t, g2), ad * bd * _div(g, g2))
