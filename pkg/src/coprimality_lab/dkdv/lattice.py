"""Sweeps of the bilinear, interchanged-bilinear and nonlinear lattice equations.

    bilinear     (1+δ) a_{m-1}^{n-1} a_m^{n+1} = a_{m-1}^n a_m^n + δ a_{m-1}^{n+1} a_m^{n-1}
    interchanged (1+δ̃) ã_{m-1}^{n-1} ã_{m+1}^n = δ̃ ã_{m+1}^{n-1} ã_{m-1}^n + ã_m^n ã_m^{n-1}
    nonlinear    1/w_{m+1}^{n+1} - 1/w_m^n + δ/(1+δ) (w_m^{n+1} - w_{m+1}^n) = 0

    w_m^n = a_{m-1}^{n+1} a_m^n / (a_m^{n+1} a_{m-1}^n)
          = ã_m^n ã_{m-1}^{n+1} / (ã_m^{n+1} ã_{m-1}^n)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import SingularEvolution, UsageError
from ..ring import FactorBasis, Factored, factored_sum
from .boundary import BILINEAR, NONLINEAR, TILDE, BoundaryData, delta_tilde


def _sum(values):
    if isinstance(values[0], Factored):
        return factored_sum(values)
    return sum(values[1:], values[0])


@dataclass(frozen=True)
class LatticeWindow:
    """Values keyed by (m, n); ``kind`` is "a", "a~" or "w"."""

    kind: str
    values: Mapping = field(repr=False)
    delta: object = field(repr=False)
    basis: FactorBasis | None = field(default=None, repr=False, compare=False)

    def __getitem__(self, mn):
        return self.values[mn]

    def __contains__(self, mn):
        return mn in self.values

    def __len__(self):
        return len(self.values)

    def cells(self) -> list[tuple[int, int]]:
        return sorted(self.values)

    def items(self):
        return [(c, self.values[c]) for c in self.cells()]

    @property
    def mmax(self) -> int:
        return max(m for m, _ in self.values)

    @property
    def nmax(self) -> int:
        return max(n for _, n in self.values)

    def rational(self, m: int, n: int):
        return self.values[m, n].to_rational()

    def restrict(self, cells) -> "LatticeWindow":
        return LatticeWindow(self.kind, {c: self.values[c] for c in cells if c in self.values}, self.delta, self.basis)


def _check(bd: BoundaryData, scheme: str):
    if bd.scheme != scheme:
        raise UsageError(f"expected {scheme} boundary data, got {bd.scheme}")


def evolve_bilinear(bd: BoundaryData, mmax: int, nmax: int, max_sum: int | None = None) -> LatticeWindow:
    """a_m^n for 0 <= m <= mmax, 0 <= n <= nmax (and m + n <= max_sum when given).

    Rows are completed bottom-up, each left to right.
    """
    _check(bd, BILINEAR)
    d = bd.delta
    lead = 1 + d
    a = dict(bd.values)
    inside = (lambda m, n: True) if max_sum is None else (lambda m, n: m + n <= max_sum)
    for n in range(1, nmax):
        for m in range(1, mmax + 1):
            if (m, n + 1) in a or not inside(m, n + 1):
                continue
            try:
                top = _sum([a[m - 1, n] * a[m, n], d * a[m - 1, n + 1] * a[m, n - 1]])
                a[m, n + 1] = top / (lead * a[m - 1, n - 1])
            except KeyError as e:
                raise UsageError(f"boundary data does not cover cell {e.args[0]}") from None
            except ZeroDivisionError:
                raise SingularEvolution((m, n + 1)) from None
    cells = {c: v for c, v in a.items() if c[0] <= mmax and c[1] <= nmax and inside(*c)}
    return LatticeWindow("a", cells, d, bd.basis)


def evolve_bilinear_tilde(bd: BoundaryData, mmax: int, nmax: int) -> LatticeWindow:
    """ã_m^n for 0 <= m <= mmax, 0 <= n <= nmax, sweeping columns left to right."""
    _check(bd, TILDE)
    d = bd.delta
    lead = 1 + d
    a = dict(bd.values)
    for m in range(1, mmax):
        for n in range(1, nmax + 1):
            if (m + 1, n) in a:
                continue
            try:
                top = _sum([d * a[m + 1, n - 1] * a[m - 1, n], a[m, n] * a[m, n - 1]])
                a[m + 1, n] = top / (lead * a[m - 1, n - 1])
            except KeyError as e:
                raise UsageError(f"boundary data does not cover cell {e.args[0]}") from None
            except ZeroDivisionError:
                raise SingularEvolution((m + 1, n)) from None
    cells = {c: v for c, v in a.items() if c[0] <= mmax and c[1] <= nmax}
    return LatticeWindow("a~", cells, d, bd.basis)


def evolve_nonlinear(bd: BoundaryData, mmax: int, nmax: int) -> LatticeWindow:
    """w_m^n for 1 <= m <= mmax, 0 <= n <= nmax."""
    _check(bd, NONLINEAR)
    d = bd.delta
    w = dict(bd.values)
    try:
        c = d / (1 + d)
    except ZeroDivisionError:
        raise SingularEvolution("delta = -1") from None
    for n in range(0, nmax):
        for m in range(1, mmax):
            if (m + 1, n + 1) in w:
                continue
            try:
                s = _sum([1 / w[m, n], -c * w[m, n + 1], c * w[m + 1, n]])
                w[m + 1, n + 1] = 1 / s
            except KeyError as e:
                raise UsageError(f"boundary data does not cover cell {e.args[0]}") from None
            except ZeroDivisionError:
                raise SingularEvolution((m + 1, n + 1)) from None
    cells = {k: v for k, v in w.items() if 1 <= k[0] <= mmax and 0 <= k[1] <= nmax}
    return LatticeWindow("w", cells, d, bd.basis)


def w_from_a(a: LatticeWindow) -> LatticeWindow:
    """w on every cell whose a-stencil is available."""
    if a.kind != "a":
        raise UsageError("w_from_a needs an a-window")
    out = {}
    for (m, n) in a.cells():
        if m < 1:
            continue
        need = [(m - 1, n + 1), (m, n + 1), (m - 1, n)]
        if all(c in a for c in need):
            out[m, n] = a[m - 1, n + 1] * a[m, n] / (a[m, n + 1] * a[m - 1, n])
    return LatticeWindow("w", out, a.delta, a.basis)


def w_from_a_tilde(at: LatticeWindow) -> LatticeWindow:
    """w on every cell whose ã-stencil is available; the parameter maps back to δ."""
    if at.kind != "a~":
        raise UsageError("w_from_a_tilde needs an ã-window")
    out = {}
    for (m, n) in at.cells():
        if m < 1:
            continue
        need = [(m, n + 1), (m - 1, n + 1), (m - 1, n)]
        if all(c in at for c in need):
            out[m, n] = at[m, n] * at[m - 1, n + 1] / (at[m, n + 1] * at[m - 1, n])
    return LatticeWindow("w", out, delta_tilde(at.delta), at.basis)


# residuals, checked in solved form: the computed cell equals the update of its stencil


def bilinear_residual_failures(a: LatticeWindow) -> list[tuple[int, int]]:
    d = a.delta
    bad = []
    for (m, n1) in a.cells():
        n = n1 - 1
        if m < 1 or n < 1:
            continue
        need = [(m - 1, n - 1), (m - 1, n), (m, n), (m - 1, n + 1), (m, n - 1)]
        if not all(c in a for c in need):
            continue
        lhs = (1 + d) * a[m - 1, n - 1] * a[m, n + 1]
        if lhs != _sum([a[m - 1, n] * a[m, n], d * a[m - 1, n + 1] * a[m, n - 1]]):
            bad.append((m, n + 1))
    return bad


def tilde_residual_failures(at: LatticeWindow) -> list[tuple[int, int]]:
    d = at.delta
    bad = []
    for (m1, n) in at.cells():
        m = m1 - 1
        if m < 1 or n < 1:
            continue
        need = [(m - 1, n - 1), (m + 1, n - 1), (m - 1, n), (m, n), (m, n - 1)]
        if not all(c in at for c in need):
            continue
        lhs = (1 + d) * at[m - 1, n - 1] * at[m + 1, n]
        if lhs != _sum([d * at[m + 1, n - 1] * at[m - 1, n], at[m, n] * at[m, n - 1]]):
            bad.append((m + 1, n))
    return bad


def nonlinear_residual_failures(w: LatticeWindow) -> list[tuple[int, int]]:
    d = w.delta
    c = d / (1 + d)
    bad = []
    for (m1, n1) in w.cells():
        m, n = m1 - 1, n1 - 1
        if m < 1 or n < 0:
            continue
        if not all(k in w for k in [(m, n), (m, n + 1), (m + 1, n)]):
            continue
        if 1 / w[m + 1, n + 1] != _sum([1 / w[m, n], -c * w[m, n + 1], c * w[m + 1, n]]):
            bad.append((m + 1, n + 1))
    return bad


def window_mismatches(a: LatticeWindow, b: LatticeWindow) -> list[tuple[int, int]]:
    """Cells present in both windows whose values differ, plus cells present in one only."""
    cells = set(a.values) | set(b.values)
    return sorted(c for c in cells if c not in a or c not in b or a[c] != b[c])
