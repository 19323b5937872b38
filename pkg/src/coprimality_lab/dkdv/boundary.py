"""Boundary data for the three lattice schemes and the tables linking them.

Every scheme works on the quarter lattice.  Values are either
:class:`~coprimality_lab.ring.Factored` (symbolic runs over one shared basis)
or :class:`fractions.Fraction` (numeric runs); the evolution code is the same
for both.

Naming: ``w{m}_{n}`` for the w initial values, ``x{m}``/``y{n}`` for free
bilinear boundary symbols, ``xt{n}``/``yt{m}`` for the interchanged system,
``delta`` for the lattice parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..errors import UsageError
from ..poly import MultiPoly, VarTable
from ..ring import FactorBasis, Factored, UnitSpec

DELTA = "delta"
BILINEAR = "bilinear-I_a"
NONLINEAR = "nonlinear-I_w"
TILDE = "tilde-I_a~"
SCHEMES = (BILINEAR, NONLINEAR, TILDE)


def w_name(m: int, n: int) -> str:
    return f"w{m}_{n}"


def w_initial_names(mmax: int, nmax: int) -> tuple[str, ...]:
    """w_m^0 for 1 <= m <= mmax, then w_1^n for 1 <= n <= nmax."""
    return tuple(w_name(m, 0) for m in range(1, mmax + 1)) + tuple(w_name(1, n) for n in range(1, nmax + 1))


def parse_delta(delta) -> Fraction | None:
    """None for a symbolic parameter, else the exact rational value."""
    if delta is None or (isinstance(delta, str) and delta.strip().lower() == "symbolic"):
        return None
    try:
        return Fraction(delta)
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"delta must be 'symbolic' or a rational number, got {delta!r}") from None


def delta_tilde(d):
    """The parameter of the interchanged system; applying it twice gives ``d`` back."""
    return -d / (1 + 2 * d)


def _setup(names, delta):
    """(basis, delta value) for a symbolic run over ``names``."""
    value = parse_delta(delta)
    vt = VarTable(((DELTA,) if value is None else ()) + tuple(names))
    basis = FactorBasis(vt)
    d = Factored.gen(basis, DELTA) if value is None else Factored.constant(basis, value)
    return basis, d


@dataclass(frozen=True)
class BoundaryData:
    """Pinned initial strips of one scheme.

    ``delta`` is the parameter of the equation the scheme evolves (the
    interchanged system carries its own transformed parameter).
    """

    scheme: str
    values: Mapping = field(repr=False)
    delta: object = field(repr=False)
    basis: FactorBasis | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise UsageError(f"unknown scheme {self.scheme!r}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.basis.vars.names if self.basis is not None else ()


def bilinear_boundary(x: Mapping[int, object], y: Mapping[int, object], delta, one=1) -> BoundaryData:
    """a_m^0 = 1, a_0^1 = 1, a_m^1 = x_m, a_0^n = y_n (n >= 2), with a_0^0 = 1."""
    vals = {(0, 0): one, (0, 1): one}
    mmax = max(x)
    for m in range(1, mmax + 1):
        vals[m, 0] = one
        vals[m, 1] = x[m]
    for n, v in y.items():
        if n >= 2:
            vals[0, n] = v
    basis = getattr(delta, "basis", None)
    return BoundaryData(BILINEAR, vals, delta, basis)


def nonlinear_boundary(w0: Mapping[int, object], w1: Mapping[int, object], delta) -> BoundaryData:
    """w_m^0 for m >= 1 and w_1^n for n >= 1."""
    vals = {(m, 0): v for m, v in w0.items()}
    vals.update({(1, n): v for n, v in w1.items() if n >= 1})
    return BoundaryData(NONLINEAR, vals, delta, getattr(delta, "basis", None))


def tilde_boundary(xt: Mapping[int, object], yt: Mapping[int, object], delta_t, one=1) -> BoundaryData:
    """ã_0^n = 1, ã_1^0 = 1, ã_1^n = x̃_n (n >= 1), ã_m^0 = ỹ_m (m >= 2)."""
    vals = {(0, 0): one, (1, 0): one}
    for n in range(1, max(xt) + 1):
        vals[0, n] = one
        vals[1, n] = xt[n]
    for m, v in yt.items():
        if m >= 2:
            vals[m, 0] = v
    return BoundaryData(TILDE, vals, delta_t, getattr(delta_t, "basis", None))


def symbolic_bilinear(mmax: int, nmax: int, delta="symbolic") -> BoundaryData:
    """Free symbols x_1..x_mmax and y_2..y_nmax."""
    names = [f"x{m}" for m in range(1, mmax + 1)] + [f"y{n}" for n in range(2, nmax + 1)]
    basis, d = _setup(names, delta)
    x = {m: Factored.gen(basis, f"x{m}") for m in range(1, mmax + 1)}
    y = {n: Factored.gen(basis, f"y{n}") for n in range(2, nmax + 1)}
    return bilinear_boundary(x, y, d, Factored.constant(basis, 1))


def symbolic_nonlinear(mmax: int, nmax: int, delta="symbolic", basis: FactorBasis | None = None) -> BoundaryData:
    """Free symbols w_m^0 (1 <= m <= mmax) and w_1^n (1 <= n <= nmax)."""
    if basis is None:
        basis, d = _setup(w_initial_names(mmax, nmax), delta)
    else:
        d = _delta_in(basis, delta)
    w0 = {m: Factored.gen(basis, w_name(m, 0)) for m in range(1, mmax + 1)}
    w1 = {n: Factored.gen(basis, w_name(1, n)) for n in range(1, nmax + 1)}
    return nonlinear_boundary(w0, w1, d)


def symbolic_tilde(mmax: int, nmax: int, delta="symbolic") -> BoundaryData:
    """Free symbols x̃_1..x̃_nmax and ỹ_2..ỹ_mmax; the parameter is δ̃(δ)."""
    names = [f"xt{n}" for n in range(1, nmax + 1)] + [f"yt{m}" for m in range(2, mmax + 1)]
    basis, d = _setup(names, delta)
    xt = {n: Factored.gen(basis, f"xt{n}") for n in range(1, nmax + 1)}
    yt = {m: Factored.gen(basis, f"yt{m}") for m in range(2, mmax + 1)}
    return tilde_boundary(xt, yt, delta_tilde(d), Factored.constant(basis, 1))


def _delta_in(basis: FactorBasis, delta):
    value = parse_delta(delta)
    if value is None:
        if DELTA not in basis.vars:
            raise UsageError("symbolic delta needs a 'delta' variable in the basis")
        return Factored.gen(basis, DELTA)
    return Factored.constant(basis, value)


@dataclass(frozen=True)
class CorrespondenceTables:
    """Boundary values of both bilinear systems written in the w initial values.

    Plain system (a-window up to ``mmax`` x ``nmax + 1``)::

        beta_j  = (1+δ)/w_1^j - δ w_1^(j-1)        1 <= j <= nmax
        alpha_l = beta_1 ... beta_l
        x_l     = 1 / (w_1^0 ... w_l^0)            1 <= l <= mmax
        y_l     = 1 / (alpha_1 ... alpha_(l-1))    2 <= l <= nmax + 1,  y_0 = y_1 = 1
        gamma_j = w_1^(j-1) w_1^j - (1+δ)/δ

    Interchanged system (parameter δ̃ = -δ/(1+2δ))::

        beta~_j  = (1+δ̃)/w_(j+1)^0 - δ̃ w_j^0       1 <= j <= mmax - 1
        x~_l     = 1 / (w_1^0 ... w_1^(l-1))        1 <= l <= nmax + 1
        y~_l     = 1 / (alpha~_1 ... alpha~_(l-1))  2 <= l <= mmax
        gamma~_j = w_j^0 w_(j+1)^0 - (1+δ̃)/δ̃
    """

    mmax: int
    nmax: int
    delta: object = field(repr=False)
    x: dict = field(repr=False)
    y: dict = field(repr=False)
    alpha: dict = field(repr=False)
    beta: dict = field(repr=False)
    gamma: dict = field(repr=False)
    x_t: dict = field(repr=False)
    y_t: dict = field(repr=False)
    alpha_t: dict = field(repr=False)
    beta_t: dict = field(repr=False)
    gamma_t: dict = field(repr=False)
    basis: FactorBasis = field(repr=False, compare=False)

    def w(self, m: int, n: int) -> Factored:
        return Factored.gen(self.basis, w_name(m, n))

    def bilinear_boundary(self) -> BoundaryData:
        return bilinear_boundary(self.x, self.y, self.delta, Factored.constant(self.basis, 1))

    def tilde_boundary(self) -> BoundaryData:
        return tilde_boundary(self.x_t, self.y_t, delta_tilde(self.delta), Factored.constant(self.basis, 1))

    def nonlinear_boundary(self) -> BoundaryData:
        w0 = {m: self.w(m, 0) for m in range(1, self.mmax + 1)}
        w1 = {n: self.w(1, n) for n in range(1, self.nmax + 1)}
        return nonlinear_boundary(w0, w1, self.delta)

    def gamma_polys(self) -> list[MultiPoly]:
        """γ_j with the δ-denominator cleared (primitive numerators)."""
        return [_cleared(g) for _, g in sorted(self.gamma.items())]

    def gamma_t_polys(self) -> list[MultiPoly]:
        return [_cleared(g) for _, g in sorted(self.gamma_t.items())]

    def identity_failures(self) -> list[str]:
        """Names of the table identities that do not hold exactly (empty when all do)."""
        bad = []
        d = self.delta
        for k in self.alpha:
            if k + 1 in self.y and self.alpha[k] != self.y[k] / self.y[k + 1]:
                bad.append(f"alpha_{k} = y_{k}/y_{k + 1}")
        for k in self.beta:
            if k + 1 in self.y and k >= 1:
                w_prev = self.w(1, k - 1)
                lhs = (1 + d) / self.w(1, k) - d * w_prev
                if lhs != self.y[k] ** 2 / (self.y[k - 1] * self.y[k + 1]):
                    bad.append(f"beta_{k} = y_{k}^2/(y_{k - 1} y_{k + 1})")
        for j, g in self.gamma.items():
            if g != -self.w(1, j) * self.beta[j] / d:
                bad.append(f"gamma_{j} = -w_1^{j} beta_{j}/delta")
        dt = delta_tilde(d)
        for j, g in self.gamma_t.items():
            if g != -self.w(j + 1, 0) * self.beta_t[j] / dt:
                bad.append(f"gamma~_{j} = -w_{j + 1}^0 beta~_{j}/delta~")
        return bad


def _cleared(g: Factored) -> MultiPoly:
    num = g.to_rational().num
    return num.primitive_part() if num.leading_coefficient() > 0 else (-num).primitive_part()


def boundary_transform(mmax: int, nmax: int, delta="symbolic", basis: FactorBasis | None = None) -> CorrespondenceTables:
    """Tables for the w-window 1 <= m <= mmax, 0 <= n <= nmax."""
    if mmax < 1 or nmax < 0:
        raise UsageError("window needs mmax >= 1 and nmax >= 0")
    value = parse_delta(delta)
    if value is not None and value in (0, -1, Fraction(-1, 2)):
        raise UsageError("delta must avoid 0, -1 and -1/2")
    if basis is None:
        basis, d = _setup(w_initial_names(mmax, nmax), delta)
    else:
        d = _delta_in(basis, delta)
    one = Factored.constant(basis, 1)

    def w(m, n):
        return Factored.gen(basis, w_name(m, n))

    beta, alpha, gamma = {}, {}, {}
    acc = one
    for j in range(1, nmax + 1):
        beta[j] = (1 + d) / w(1, j) - d * w(1, j - 1)
        acc = acc * beta[j]
        alpha[j] = acc
        gamma[j] = w(1, j - 1) * w(1, j) - (1 + d) / d
    x = {}
    acc = one
    for l in range(1, mmax + 1):
        acc = acc * w(l, 0)
        x[l] = 1 / acc
    y = {0: one, 1: one}
    acc = one
    for l in range(2, nmax + 2):
        acc = acc * alpha[l - 1]
        y[l] = 1 / acc

    dt = delta_tilde(d)
    beta_t, alpha_t, gamma_t = {}, {}, {}
    acc = one
    for j in range(1, mmax):
        beta_t[j] = (1 + dt) / w(j + 1, 0) - dt * w(j, 0)
        acc = acc * beta_t[j]
        alpha_t[j] = acc
        gamma_t[j] = w(j, 0) * w(j + 1, 0) - (1 + dt) / dt
    x_t = {}
    acc = one
    for l in range(1, nmax + 2):
        acc = acc * w(1, l - 1)
        x_t[l] = 1 / acc
    y_t = {}
    acc = one
    for l in range(2, mmax + 1):
        acc = acc * alpha_t[l - 1]
        y_t[l] = 1 / acc
    return CorrespondenceTables(
        mmax, nmax, d, x, y, alpha, beta, gamma, x_t, y_t, alpha_t, beta_t, gamma_t, basis
    )


def w_monomial_units(vars: VarTable) -> UnitSpec:
    """Monomials in the w initial values; δ-only factors are units too."""
    ws = frozenset(n for n in vars.names if n.startswith("w"))
    return UnitSpec(ws, frozenset({DELTA}) & frozenset(vars.names), (), "w-monomial")


def symbol_monomial_units(vars: VarTable, name: str = "monomial") -> UnitSpec:
    """Monomials in every non-parameter variable, δ-only factors as units."""
    syms = frozenset(n for n in vars.names if n != DELTA)
    return UnitSpec(syms, frozenset({DELTA}) & frozenset(vars.names), (), name)


def ring_B(tables: CorrespondenceTables) -> UnitSpec:
    """w-monomials, δ-only factors and the γ_j."""
    return w_monomial_units(tables.basis.vars).with_extra(*tables.gamma_polys(), name="B")


def ring_B_tilde(tables: CorrespondenceTables) -> UnitSpec:
    """w-monomials, δ-only factors and the γ̃_j."""
    return w_monomial_units(tables.basis.vars).with_extra(*tables.gamma_t_polys(), name="B-tilde")
