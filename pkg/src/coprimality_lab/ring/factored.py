"""Rational functions kept as products over a shared co-prime basis.

Recurrence terms are mostly built by multiplying and dividing earlier terms;
only the occasional sum needs an expanded polynomial.  A :class:`Factored`
value stores ``const * monomial * prod(leaf_i ** e_i)`` where the leaves are
pairwise co-prime primitive polynomials held by a :class:`FactorBasis`.
Multiplication and division are exponent arithmetic, and a sum expands only
the part that is not common to both operands before refining the basis with
the result.

Leaves are pairwise co-prime but not necessarily irreducible; a leaf that
later turns out to share a factor with a new polynomial is split, and
values referring to it are rewritten on access.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd as _igcd
from typing import Mapping

from ..errors import UsageError
from ..poly import MultiPoly
from ..poly.gcd import gcd, try_divide
from ..poly.images import gcd_degree_bound
from .rational import RationalFunction

# leaf powers kept around for expansion
POWER_CACHE_SIZE = 512


def _is_const(f: MultiPoly) -> bool:
    return f.is_constant()


def _coprime_base(items: list) -> list:
    """Refine [(poly, mult)] into pairwise co-prime pieces with the same product."""
    items = [(p, m) for p, m in items if not _is_const(p)]
    changed = True
    while changed:
        changed = False
        for a in range(len(items)):
            for c in range(a + 1, len(items)):
                (p, m), (q, n) = items[a], items[c]
                if p == q:
                    merged = [(p, m + n)]
                else:
                    g = gcd(p, q)
                    if _is_const(g):
                        continue
                    merged = [(p.exact_div(g), m), (g, m + n), (q.exact_div(g), n)]
                rest = [it for k, it in enumerate(items) if k not in (a, c)]
                items = rest + [(x, k) for x, k in merged if not _is_const(x)]
                changed = True
                break
            if changed:
                break
    return items


def _relate(r: MultiPoly, b: MultiPoly):
    """None if co-prime, ("divides", r/b) if b | r, else ("split", gcd)."""
    shared = set(r.used_vars()) & set(b.used_vars())
    if not shared:
        return None
    bounds = {v: gcd_degree_bound(r, b, v) for v in shared}
    if not any(bounds.values()):
        return None
    bd = b.degrees()
    if all(bounds.get(v, 0) == bd[v] for v in b.used_vars()):
        q = try_divide(r, b)
        if q is not None:
            return "divides", q
    g = gcd(r, b)
    if _is_const(g):
        return None
    if g == b:
        return "divides", r.exact_div(b)
    return "split", g


class FactorBasis:
    """A growing set of pairwise co-prime, primitive, monomial-free polynomials
    with positive leading coefficients."""

    def __init__(self, vars):
        self.vars = vars
        self._polys: list[MultiPoly] = []
        self._live: list[int] = []
        self._lookup: dict[MultiPoly, int] = {}
        self._children: dict[int, tuple] = {}
        self._powers: dict[tuple[int, int], MultiPoly] = {}
        self.version = 0

    def __len__(self):
        return len(self._live)

    def leaves(self) -> list[int]:
        return list(self._live)

    def poly(self, i: int) -> MultiPoly:
        return self._polys[i]

    def is_live(self, i: int) -> bool:
        return i not in self._children

    def resolve(self, exps: Mapping[int, int]) -> dict[int, int]:
        """Rewrite exponents on retired leaves in terms of live ones."""
        if not any(i in self._children for i in exps):
            return dict(exps)
        out: Counter = Counter()
        stack = list(exps.items())
        while stack:
            i, e = stack.pop()
            kids = self._children.get(i)
            if kids is None:
                out[i] += e
            else:
                stack.extend((j, e * m) for j, m in kids)
        return {i: e for i, e in sorted(out.items()) if e}

    def _new_leaf(self, f: MultiPoly) -> int:
        i = len(self._polys)
        self._polys.append(f)
        self._live.append(i)
        self._lookup[f] = i
        return i

    def _split(self, i: int, g: MultiPoly):
        b = self._polys[i]
        pieces = _coprime_base([(g, 1), (b.exact_div(g), 1)])
        self._live.remove(i)
        del self._lookup[b]
        self._children[i] = tuple((self._new_leaf(p), m) for p, m in pieces)
        self._powers = {k: v for k, v in self._powers.items() if k[0] != i}
        self.version += 1

    def factor(self, f: MultiPoly) -> tuple[int, tuple, dict]:
        """Write nonzero ``f`` as (integer, monomial exponents, {leaf: exponent})."""
        if f.vars != self.vars:
            raise UsageError("polynomial does not live over the basis variables")
        if not f:
            raise UsageError("cannot factor zero")
        mono = f.monomial_content()
        core = f.unshift_monomial(mono)
        c = core.content()
        if core.leading_coefficient() < 0:
            c = -c
        core = core.divide_int(c)
        if core.is_constant():
            return c, mono, {}
        return c, mono, self._insert(core)

    def _insert(self, core: MultiPoly) -> dict:
        out: Counter = Counter()
        work = [core]
        while work:
            r = work.pop()
            if _is_const(r):
                continue
            hit = self._lookup.get(r)
            if hit is not None:
                out[hit] += 1
                continue
            for i in list(self._live):
                rel = _relate(r, self._polys[i])
                if rel is None:
                    continue
                kind, value = rel
                if kind == "divides":
                    out[i] += 1
                    work.append(value)
                else:
                    self._split(i, value)
                    work.append(r)
                break
            else:
                out[self._new_leaf(r)] += 1
        return self.resolve(out)

    def power(self, i: int, e: int) -> MultiPoly:
        key = (i, e)
        p = self._powers.get(key)
        if p is None:
            p = self._polys[i] ** e
            if len(self._powers) >= POWER_CACHE_SIZE:
                self._powers.clear()
            self._powers[key] = p
        return p

    def expand(self, exps: Mapping[int, int]) -> MultiPoly:
        """prod(leaf ** e) for non-negative exponents on live leaves."""
        parts = sorted((self.power(i, e) for i, e in exps.items() if e), key=len)
        if not parts:
            return MultiPoly.one(self.vars)
        acc = parts[0]
        for p in parts[1:]:
            acc = acc * p
        return acc


def _mono_add(a, b, sign=1):
    return tuple(x + sign * y for x, y in zip(a, b))


class Factored:
    """const * prod(var_i ** mono_i) * prod(leaf ** e) over a :class:`FactorBasis`."""

    __slots__ = ("basis", "const", "mono", "_exps", "_version", "_rf")

    def __init__(self, basis: FactorBasis, const: Fraction, mono: tuple, exps: Mapping[int, int]):
        self.basis = basis
        self.const = Fraction(const)
        if not self.const:
            mono = (0,) * basis.vars.arity
            exps = {}
        self.mono = tuple(mono)
        self._exps = {i: e for i, e in exps.items() if e}
        # exponents may mention leaves retired while the value was assembled
        self._version = -1
        self._rf = None

    # construction

    @classmethod
    def constant(cls, basis: FactorBasis, c) -> "Factored":
        return cls(basis, Fraction(c), (0,) * basis.vars.arity, {})

    @classmethod
    def gen(cls, basis: FactorBasis, name: str) -> "Factored":
        mono = [0] * basis.vars.arity
        mono[basis.vars.position(name)] = 1
        return cls(basis, Fraction(1), tuple(mono), {})

    @classmethod
    def from_poly(cls, basis: FactorBasis, f: MultiPoly) -> "Factored":
        if not f:
            return cls.constant(basis, 0)
        c, mono, exps = basis.factor(f)
        return cls(basis, Fraction(c), mono, exps)

    @classmethod
    def from_rational(cls, basis: FactorBasis, f: RationalFunction) -> "Factored":
        return cls.from_poly(basis, f.num) / cls.from_poly(basis, f.den)

    # views

    @property
    def exps(self) -> dict[int, int]:
        if self._version != self.basis.version:
            self._exps = self.basis.resolve(self._exps)
            self._version = self.basis.version
        return self._exps

    @property
    def vars(self):
        return self.basis.vars

    def is_zero(self) -> bool:
        return not self.const

    def __bool__(self):
        return bool(self.const)

    def numerator_factors(self) -> list[tuple[MultiPoly, int]]:
        return [(self.basis.poly(i), e) for i, e in sorted(self.exps.items()) if e > 0]

    def denominator_factors(self) -> list[tuple[MultiPoly, int]]:
        return [(self.basis.poly(i), -e) for i, e in sorted(self.exps.items()) if e < 0]

    def to_rational(self) -> RationalFunction:
        if self._rf is None:
            vt = self.vars
            ex = self.exps
            num = self.basis.expand({i: e for i, e in ex.items() if e > 0})
            den = self.basis.expand({i: -e for i, e in ex.items() if e < 0})
            num = num.shift_monomial([max(m, 0) for m in self.mono]) * self.const.numerator
            den = den.shift_monomial([max(-m, 0) for m in self.mono]) * self.const.denominator
            if not self.const:
                num, den = MultiPoly.zero(vt), MultiPoly.one(vt)
            self._rf = RationalFunction(num, den)
        return self._rf

    @property
    def num(self) -> MultiPoly:
        return self.to_rational().num

    @property
    def den(self) -> MultiPoly:
        return self.to_rational().den

    def __repr__(self):
        return f"Factored({self.to_rational()})"

    def __str__(self):
        return str(self.to_rational())

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        value = self.const
        if not value:
            return value
        for name, m in zip(self.vars.names, self.mono):
            if m:
                value *= Fraction(point[name]) ** m
        for i, e in self.exps.items():
            v = self.basis.poly(i).evaluate(point)
            if not v and e < 0:
                raise ZeroDivisionError("denominator vanishes at the point")
            value *= v ** e
        return value

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.const == other.const and self.mono == other.mono and self.exps == other.exps

    def __hash__(self):
        return hash((self.const, self.mono, tuple(sorted(self.exps.items()))))

    # arithmetic

    def _coerce(self, other) -> "Factored | None":
        if isinstance(other, Factored):
            if other.basis is self.basis:
                return other
            return Factored.from_rational(self.basis, other.to_rational().lift(self.vars))
        if isinstance(other, (int, Fraction)):
            return Factored.constant(self.basis, other)
        if isinstance(other, MultiPoly):
            return Factored.from_poly(self.basis, other)
        if isinstance(other, RationalFunction):
            return Factored.from_rational(self.basis, other)
        return None

    def __neg__(self):
        return Factored(self.basis, -self.const, self.mono, self.exps)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.const or not other.const:
            return Factored.constant(self.basis, 0)
        ex = Counter(self.exps)
        ex.update(other.exps)
        return Factored(self.basis, self.const * other.const, _mono_add(self.mono, other.mono), ex)

    __rmul__ = __mul__

    def inverse(self) -> "Factored":
        if not self.const:
            raise ZeroDivisionError("inverse of zero")
        return Factored(self.basis, 1 / self.const, tuple(-m for m in self.mono), {i: -e for i, e in self.exps.items()})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise UsageError("integer exponents only")
        if e < 0:
            return self.inverse() ** (-e)
        if not self.const:
            return Factored.constant(self.basis, 1 if e == 0 else 0)
        return Factored(self.basis, self.const ** e, tuple(m * e for m in self.mono), {i: k * e for i, k in self.exps.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _add(other, -self)


def _add(a: Factored, b: Factored) -> Factored:
    return factored_sum([a, b])


def factored_sum(values) -> Factored:
    """Sum of values over one basis, expanding only what is not common to all."""
    values = list(values)
    if not values:
        raise UsageError("factored_sum needs at least one value")
    nonzero = [v for v in values if v.const]
    if not nonzero:
        return values[0]
    values = nonzero
    if len(values) == 1:
        return values[0]
    basis = values[0].basis
    exps = [v.exps for v in values]
    keys = set().union(*exps)
    common = {}
    for i in keys:
        m = min(e.get(i, 0) for e in exps)
        if m:
            common[i] = m
    cm = tuple(min(col) for col in zip(*(v.mono for v in values)))
    base = values[0].const
    ratios = [v.const / base for v in values]
    lcd = 1
    for r in ratios:
        lcd = lcd * r.denominator // _igcd(lcd, r.denominator)
    s = None
    for v, e, r in zip(values, exps, ratios):
        rest = {i: k - common.get(i, 0) for i, k in e.items()}
        for i, m in common.items():
            rest.setdefault(i, -m)
        p = basis.expand(rest).shift_monomial(_mono_add(v.mono, cm, -1))
        term = p * (r.numerator * (lcd // r.denominator))
        s = term if s is None else s + term
    if not s:
        return Factored.constant(basis, 0)
    c, mono, ex = basis.factor(s)
    total = Counter(common)
    total.update(ex)
    return Factored(basis, base / lcd * c, _mono_add(cm, mono), total)
