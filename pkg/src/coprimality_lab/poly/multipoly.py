"""Sparse multivariate polynomials over the integers.

Terms live in a dict from packed monomial keys (see :mod:`.vartable`) to
nonzero Python integers.  Values are treated as immutable; every operation
returns a fresh polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import DegreeDrop, NonDivisible, UsageError
from .vartable import FIELD_MASK, MAX_EXPONENT, VarTable

# products with fewer coefficient multiplications than this never try the
# packed big-integer route
KRONECKER_MIN_WORK = 4096
NUMPY_MIN_WORK = 1 << 15
RECURSIVE_DIV_MIN_WORK = 1 << 20


class MultiPoly:
    __slots__ = ("vars", "_t", "_cache")

    def __init__(self, vars: VarTable, terms: dict | None = None):
        # ``terms`` maps packed keys to nonzero ints and is trusted as given.
        self.vars = vars
        self._t = {} if terms is None else terms
        self._cache = None

    # construction

    @classmethod
    def zero(cls, vars: VarTable) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def constant(cls, vars: VarTable, c: int) -> "MultiPoly":
        c = _as_int(c)
        return cls(vars, {0: c} if c else {})

    @classmethod
    def one(cls, vars: VarTable) -> "MultiPoly":
        return cls(vars, {0: 1})

    @classmethod
    def gen(cls, vars: VarTable, name: str) -> "MultiPoly":
        return cls(vars, {vars.var_key(vars.position(name)): 1})

    @classmethod
    def monomial(cls, vars: VarTable, exps: Sequence[int], coeff: int = 1) -> "MultiPoly":
        coeff = _as_int(coeff)
        return cls(vars, {vars.pack(exps): coeff} if coeff else {})

    @classmethod
    def from_terms(cls, vars: VarTable, terms: Mapping | Iterable) -> "MultiPoly":
        """Build from ``{exponent tuple: coefficient}`` or an iterable of pairs."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[int, int] = {}
        for exps, c in items:
            c = _as_int(c)
            if not c:
                continue
            k = vars.pack(tuple(exps))
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return cls(vars, out)

    # basic protocol

    def _c(self) -> dict:
        c = self._cache
        if c is None:
            c = self._cache = {}
        return c

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __hash__(self):
        c = self._c()
        h = c.get("hash")
        if h is None:
            h = c["hash"] = hash((self.vars, frozenset(self._t.items())))
        return h

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self._t == other._t
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return self.to_text()

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        """Exponent-tuple view of the terms in descending graded-lex order."""
        unpack = self.vars.unpack
        return {unpack(k): self._t[k] for k in self.sorted_keys()}

    def sorted_keys(self) -> list[int]:
        c = self._c()
        keys = c.get("keys")
        if keys is None:
            keys = c["keys"] = sorted(self._t, reverse=True)
        return keys

    def items(self):
        """(exponent tuple, coefficient) pairs in descending graded-lex order."""
        unpack = self.vars.unpack
        t = self._t
        return [(unpack(k), t[k]) for k in self.sorted_keys()]

    # predicates and simple accessors

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise UsageError("polynomial is not constant")
        return self._t.get(0, 0)

    def leading_key(self) -> int:
        if not self._t:
            raise UsageError("zero polynomial has no leading term")
        c = self._c()
        k = c.get("lk")
        if k is None:
            k = c["lk"] = max(self._t)
        return k

    def leading_coefficient(self) -> int:
        return self._t[self.leading_key()]

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        k = self.leading_key()
        return self.vars.unpack(k), self._t[k]

    def degrees(self) -> tuple[int, ...]:
        """Per-variable maximal exponents (all zero for constants)."""
        c = self._c()
        d = c.get("degs")
        if d is None:
            n = self.vars.arity
            if len(self._t) >= 256:
                from .sparse_np import key_fields

                cols = key_fields(self._t.keys(), n + 1).max(axis=0)
                d = c["degs"] = tuple(int(cols[n - 1 - i]) for i in range(n))
                return d
            shifts = self.vars._shifts
            best = [0] * n
            # OR of keys bounds nothing, so scan fields per variable
            for k in self._t:
                for i in range(n):
                    e = (k >> shifts[i]) & FIELD_MASK
                    if e > best[i]:
                        best[i] = e
            d = c["degs"] = tuple(best)
        return d

    def degree(self, var: str | int | None = None) -> int:
        """Total degree, or the degree in one variable; the zero polynomial has degree -1."""
        if not self._t:
            return -1
        if var is None:
            c = self._c()
            td = c.get("tdeg")
            if td is None:
                td = c["tdeg"] = self.vars.key_degree(max(self._t))
            return td
        i = var if isinstance(var, int) else self.vars.position(var)
        return self.degrees()[i]

    def used_vars(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees()) if d)

    def max_coeff_bits(self) -> int:
        c = self._c()
        b = c.get("bits")
        if b is None:
            b = c["bits"] = max((abs(v).bit_length() for v in self._t.values()), default=0)
        return b

    def lift(self, vars: VarTable) -> "MultiPoly":
        """Re-express the polynomial over a table containing all of its variables."""
        if vars == self.vars:
            return self
        f = self.vars.remap(vars)
        return MultiPoly(vars, {f(k): v for k, v in self._t.items()})

    # ring operations

    def _check(self, other: "MultiPoly"):
        if self.vars is not other.vars and self.vars != other.vars:
            raise UsageError("polynomials live over different variable tables")

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.vars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(self.vars, _add_terms(self._t, other._t, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(self.vars, _add_terms(self._t, other._t, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return MultiPoly(self.vars, {k: -v for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MultiPoly(self.vars, {})
            if other == 1:
                return self
            return MultiPoly(self.vars, {k: v * other for k, v in self._t.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise UsageError("polynomial powers need a non-negative integer exponent")
        result = MultiPoly.one(self.vars)
        if e == 0:
            return result
        if len(self._t) == 1:
            (k, c), = self._t.items()
            _check_degrees(self, e)
            return MultiPoly(self.vars, {k * e: c ** e})
        base = self
        while True:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if not e:
                return result
            base = mul(base, base)

    def scale(self, c: int) -> "MultiPoly":
        return self * c

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        return exact_div(self, other)

    def divide_int(self, c: int) -> "MultiPoly":
        """Divide every coefficient by ``c`` exactly."""
        if c == 1:
            return self
        if c == -1:
            return -self
        out = {}
        for k, v in self._t.items():
            q, r = divmod(v, c)
            if r:
                raise NonDivisible(f"coefficient {v} not divisible by {c}")
            out[k] = q
        return MultiPoly(self.vars, out)

    # monomial handling

    def monomial_content(self) -> tuple[int, ...]:
        """Largest monomial dividing every term (exponent vector)."""
        if not self._t:
            raise UsageError("zero polynomial has no monomial content")
        n = self.vars.arity
        shifts = self.vars._shifts
        it = iter(self._t)
        first = next(it)
        low = [(first >> s) & FIELD_MASK for s in shifts]
        for k in it:
            for i in range(n):
                if low[i]:
                    e = (k >> shifts[i]) & FIELD_MASK
                    if e < low[i]:
                        low[i] = e
            if not any(low):
                break
        return tuple(low)

    def shift_monomial(self, exps: Sequence[int]) -> "MultiPoly":
        """Multiply by the monomial with exponents ``exps`` (all non-negative)."""
        if not any(exps):
            return self
        mk = self.vars.pack(tuple(exps))
        _check_degree_sum(self, exps)
        return MultiPoly(self.vars, {k + mk: v for k, v in self._t.items()})

    def unshift_monomial(self, exps: Sequence[int]) -> "MultiPoly":
        """Divide by a monomial that divides every term."""
        if not any(exps):
            return self
        mk = self.vars.pack(tuple(exps))
        div = self.vars.divides_key
        out = {}
        for k, v in self._t.items():
            if not div(mk, k):
                raise NonDivisible("monomial does not divide polynomial")
            out[k - mk] = v
        return MultiPoly(self.vars, out)

    def content(self) -> int:
        return content(self)

    def primitive_part(self) -> "MultiPoly":
        return primitive_part(self)

    def normalized(self) -> "MultiPoly":
        """The associate with positive leading coefficient."""
        if self._t and self.leading_coefficient() < 0:
            return -self
        return self

    def coefficients_in(self, var: str | int) -> dict[int, "MultiPoly"]:
        """Split as a polynomial in ``var``: degree -> coefficient (without ``var``)."""
        i = var if isinstance(var, int) else self.vars.position(var)
        s = self.vars._shifts[i]
        ts = self.vars._total_shift
        out: dict[int, dict] = {}
        for k, v in self._t.items():
            e = (k >> s) & FIELD_MASK
            if e:
                k = k - (e << s) - (e << ts)
            out.setdefault(e, {})[k] = v
        return {e: MultiPoly(self.vars, t) for e, t in sorted(out.items())}

    def leading_coefficient_in(self, var: str | int) -> "MultiPoly":
        i = var if isinstance(var, int) else self.vars.position(var)
        d = self.degrees()[i]
        s = self.vars._shifts[i]
        ts = self.vars._total_shift
        drop = (d << s) + (d << ts)
        out = {}
        for k, v in self._t.items():
            if (k >> s) & FIELD_MASK == d:
                out[k - drop] = v
        return MultiPoly(self.vars, out)

    # evaluation

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        return evaluate(self, point)

    def specialize(self, keep: str, point: Mapping[str, int], p: int | None = None):
        return specialize(self, keep, point, p)

    # serialization

    def to_text(self) -> str:
        if not self._t:
            return "0"
        names = self.vars.names
        shifts = self.vars._shifts
        t = self._t
        parts = []
        for k in self.sorted_keys():
            c = t[k]
            factors = []
            for name, s in zip(names, shifts):
                e = (k >> s) & FIELD_MASK
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(sign + body)
        return "".join(parts)


# helpers


def _as_int(c) -> int:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    try:
        import gmpy2

        if isinstance(c, type(gmpy2.mpz(0))):
            return int(c)
    except ImportError:  # pragma: no cover
        pass
    raise UsageError(f"coefficients must be integers, got {c!r}")


def _add_terms(a: dict, b: dict, sign: int) -> dict:
    if len(b) > len(a) and sign == 1:
        a, b = b, a
        out = dict(a)
    elif len(b) > len(a):
        out = {k: -v for k, v in b.items()}
        b = a
        sign = 1
    else:
        out = dict(a)
    get = out.get
    if sign == 1:
        for k, v in b.items():
            s = get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
    else:
        for k, v in b.items():
            s = get(k, 0) - v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _check_degrees(f: MultiPoly, e: int):
    if f.degree() * e > MAX_EXPONENT:
        raise UsageError("exponent overflow in power")


def _check_degree_sum(f: MultiPoly, exps: Sequence[int]):
    d = f.degrees()
    if f.degree() + sum(exps) > MAX_EXPONENT or any(a + b > MAX_EXPONENT for a, b in zip(d, exps)):
        raise UsageError("exponent overflow")


def _require_same(f: MultiPoly, g: MultiPoly):
    if f.vars is not g.vars and f.vars != g.vars:
        raise UsageError("polynomials live over different variable tables")


# public operations


def add(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    _require_same(f, g)
    return f + g


def mul(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    _require_same(f, g)
    a, b = f._t, g._t
    if not a or not b:
        return MultiPoly(f.vars, {})
    if f.degree() + g.degree() > MAX_EXPONENT:
        raise UsageError("exponent overflow in product")
    df, dg = f.degrees(), g.degrees()
    if any(x + y > MAX_EXPONENT for x, y in zip(df, dg)):
        raise UsageError("exponent overflow in product")
    if len(a) == 1 or len(b) == 1:
        if len(a) != 1:
            a, b = b, a
        (ka, ca), = a.items()
        return MultiPoly(f.vars, {ka + k: ca * v for k, v in b.items()})
    if len(a) * len(b) >= KRONECKER_MIN_WORK:
        from .kronecker import kronecker_mul

        t = kronecker_mul(f, g)
        if t is not None:
            return MultiPoly(f.vars, t)
    if len(a) * len(b) >= NUMPY_MIN_WORK:
        from .sparse_np import numpy_mul

        t = numpy_mul(f, g)
        if t is not None:
            return MultiPoly(f.vars, t)
    return MultiPoly(f.vars, _schoolbook(a, b))


def _schoolbook(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    a_items = list(a.items())
    for kb, cb in b.items():
        for ka, ca in a_items:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Return ``q`` with ``f == q*g`` or raise :class:`NonDivisible`."""
    _require_same(f, g)
    if not g._t:
        raise UsageError("division by the zero polynomial")
    if not f._t:
        return MultiPoly(f.vars, {})
    vt = f.vars
    gt = g._t
    if len(gt) == 1:
        (gk, gc), = gt.items()
        div = vt.divides_key
        out = {}
        for k, v in f._t.items():
            q, r = divmod(v, gc)
            if r or not div(gk, k):
                raise NonDivisible("monomial divisor does not divide")
            out[k - gk] = q
        return MultiPoly(vt, out)
    if f.degree() < g.degree() or any(a < b for a, b in zip(f.degrees(), g.degrees())):
        raise NonDivisible("divisor has larger degree")
    if len(f) * len(gt) >= KRONECKER_MIN_WORK:
        from .kronecker import kronecker_div

        res = kronecker_div(f, g)
        if res is not None:
            if res is False:
                raise NonDivisible("packed integer division left a remainder")
            return MultiPoly(vt, res)
    if len(f) * len(gt) >= RECURSIVE_DIV_MIN_WORK:
        return _recursive_div(f, g)
    return MultiPoly(vt, _heap_div(f._t, gt, vt))


def _recursive_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact division viewing both as polynomials in one variable of ``g``.

    Each quotient coefficient costs one smaller exact division by the leading
    coefficient; the updates are plain products, which vectorize well.
    """
    vt = f.vars
    degs = g.degrees()
    cands = []
    for i in g.used_vars():
        cands.append((degs[i], len(g.leading_coefficient_in(i)), i))
    _, _, x = min(cands)
    gc = g.coefficients_in(x)
    dg = max(gc)
    lc = gc.pop(dg)
    rem = f.coefficients_in(x)
    df = max(rem)
    if df < dg:
        raise NonDivisible("divisor has larger degree")
    q = {}
    for k in range(df - dg, -1, -1):
        top = rem.pop(k + dg, None)
        if not top:
            continue
        qk = exact_div(top, lc)
        q[k] = qk
        for j, cj in gc.items():
            cur = rem.get(k + j)
            rem[k + j] = cur - qk * cj if cur is not None else -(qk * cj)
    if any(r for r in rem.values()):
        raise NonDivisible("nonzero remainder")
    out = {}
    s = vt._shifts[x]
    ts = vt._total_shift
    for k, qk in q.items():
        shift = (k << s) + (k << ts)
        for key, v in qk._t.items():
            out[key + shift] = v
    return MultiPoly(vt, out)


def _heap_div(ft: dict, gt: dict, vt: VarTable) -> dict:
    import heapq

    lk = max(gt)
    lc = gt[lk]
    rest = [(k, c) for k, c in gt.items() if k != lk]
    guard = vt._guard
    rem = dict(ft)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    push, pop = heapq.heappush, heapq.heappop
    q: dict[int, int] = {}
    while rem:
        while True:
            k = -pop(heap)
            if k in rem:
                break
        c = rem.pop(k)
        if ((k | guard) - lk) & guard != guard:
            raise NonDivisible("leading monomial not divisible")
        qc, r = divmod(c, lc)
        if r:
            raise NonDivisible("leading coefficient not divisible")
        qk = k - lk
        q[qk] = qc
        get = rem.get
        for gk, gc in rest:
            kk = qk + gk
            v = get(kk)
            if v is None:
                rem[kk] = -qc * gc
                push(heap, -kk)
            else:
                v -= qc * gc
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return q


def content(f: MultiPoly) -> int:
    if not f._t:
        raise UsageError("content of the zero polynomial is undefined")
    c = f._c()
    v = c.get("content")
    if v is None:
        v = c["content"] = math.gcd(*f._t.values())
    return v


def primitive_part(f: MultiPoly) -> MultiPoly:
    return f.divide_int(content(f))


def evaluate(f: MultiPoly, point: Mapping[str, object]) -> Fraction:
    """Exact value of ``f`` at a rational point (every used variable must be assigned)."""
    vt = f.vars
    degs = f.degrees()
    nums = []
    dens = []
    tables = []
    used = [i for i, d in enumerate(degs) if d]
    den_total = 1
    for i in used:
        name = vt.names[i]
        if name not in point:
            raise UsageError(f"variable {name!r} is not assigned")
        val = Fraction(point[name])
        d = degs[i]
        p, q = val.numerator, val.denominator
        # p^e q^(d-e) keeps everything integral
        pw = [1] * (d + 1)
        qw = [1] * (d + 1)
        for e in range(1, d + 1):
            pw[e] = pw[e - 1] * p
            qw[e] = qw[e - 1] * q
        tables.append([pw[e] * qw[d - e] for e in range(d + 1)])
        den_total *= qw[d]
        nums.append(p)
        dens.append(q)
    shifts = [vt._shifts[i] for i in used]
    total = 0
    for k, c in f._t.items():
        v = c
        for s, tab in zip(shifts, tables):
            v *= tab[(k >> s) & FIELD_MASK]
        total += v
    return Fraction(total, den_total)


def specialize(f: MultiPoly, keep: str, point: Mapping[str, int], p: int | None = None):
    """Univariate image in ``keep`` after substituting integers for the other variables.

    Returns a univariate :class:`MultiPoly` (same table) or, when ``p`` is
    given, a :class:`~.modp.PrimePoly`.  Raises :class:`DegreeDrop` when the
    leading coefficient in ``keep`` vanishes at the point.
    """
    from .modp import PrimePoly

    vt = f.vars
    ki = vt.position(keep)
    degs = f.degrees()
    ks = vt._shifts[ki]
    powers = []
    for i, d in enumerate(degs):
        if i == ki or not d:
            continue
        name = vt.names[i]
        if name not in point:
            raise UsageError(f"variable {name!r} is not assigned")
        v = _as_int(point[name])
        if p is not None:
            v %= p
        pw = [1] * (d + 1)
        for e in range(1, d + 1):
            pw[e] = pw[e - 1] * v if p is None else pw[e - 1] * v % p
        powers.append((vt._shifts[i], pw))
    dk = degs[ki]
    acc = [0] * (dk + 1)
    for k, c in f._t.items():
        v = c
        for s, pw in powers:
            v *= pw[(k >> s) & FIELD_MASK]
        acc[(k >> ks) & FIELD_MASK] += v
    if p is not None:
        acc = [a % p for a in acc]
    if f._t and acc[dk] == 0:
        raise DegreeDrop(f"leading coefficient in {keep} vanishes at the point")
    if p is not None:
        return PrimePoly(p, tuple(acc))
    return MultiPoly(vt, {vt.var_key(ki, e) if e else 0: c for e, c in enumerate(acc) if c})
