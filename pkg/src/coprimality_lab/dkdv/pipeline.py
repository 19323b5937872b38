"""The three routes to w on one window, over one shared factor basis."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .boundary import CorrespondenceTables, boundary_transform
from .lattice import (
    LatticeWindow,
    bilinear_residual_failures,
    evolve_bilinear,
    evolve_bilinear_tilde,
    evolve_nonlinear,
    nonlinear_residual_failures,
    tilde_residual_failures,
    w_from_a,
    w_from_a_tilde,
)


@dataclass
class PipelineResult:
    tables: CorrespondenceTables
    nonlinear: LatticeWindow
    a: LatticeWindow
    a_tilde: LatticeWindow
    w_bilinear: LatticeWindow
    w_tilde: LatticeWindow
    mismatches: dict = field(default_factory=dict)
    residual_failures: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.mismatches.values()) and not any(self.residual_failures.values())


def _compare(ref: LatticeWindow, other: LatticeWindow) -> list:
    bad = []
    for c in ref.cells():
        if c not in other or other[c] != ref[c]:
            bad.append(c)
    return bad


def run_pipeline(mmax: int, nmax: int, delta="symbolic", residuals: bool = True) -> PipelineResult:
    """Evolve w on 1 <= m <= mmax, 0 <= n <= nmax three ways and compare.

    The nonlinear sweep is the reference; the two bilinear routes start from
    the transformed boundary tables.
    """
    clock = {}

    def timed(name, fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        clock[name] = clock.get(name, 0.0) + time.perf_counter() - t0
        return out

    tables = timed("tables", boundary_transform, mmax, nmax, delta)
    w = timed("nonlinear", evolve_nonlinear, tables.nonlinear_boundary(), mmax, nmax)
    a = timed("bilinear", evolve_bilinear, tables.bilinear_boundary(), mmax, nmax + 1)
    at = timed("tilde", evolve_bilinear_tilde, tables.tilde_boundary(), mmax, nmax + 1)
    wb = timed("w_from_a", w_from_a, a)
    wt = timed("w_from_a_tilde", w_from_a_tilde, at)
    mismatches = {"bilinear": _compare(w, wb), "tilde": _compare(w, wt)}
    fails = {}
    if residuals:
        fails["bilinear"] = timed("residuals", bilinear_residual_failures, a)
        fails["tilde"] = timed("residuals", tilde_residual_failures, at)
        fails["nonlinear"] = timed("residuals", nonlinear_residual_failures, wb)
    return PipelineResult(tables, w, a, at, wb.restrict(w.cells()), wt.restrict(w.cells()), mismatches, fails, clock)
