"""Run the checks named in an :class:`ExperimentConfig` and collect report sections."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import (
    UNCONFINED,
    coprime_pairs,
    confinement_table,
    degree_growth,
    irreducible_certify,
    separated,
)
from .config import LATTICE, ExperimentConfig
from .errors import CoprimalityLabError, SingularEvolution, UsageError
from .recurrence import RecurrenceSpec, evolve, get_builtin, numeric_evolve, parse_spec
from .recurrence.builtins import BUILTINS
from .ring import UnitSpec, is_laurent

RATIO_DIGITS = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class RunResult:
    config: ExperimentConfig
    checks: list = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    valuation_rows: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    window: object = None
    sequence: object = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)


class _Clock:
    def __init__(self, sink: dict):
        self.sink = sink

    def __call__(self, name, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.sink[name] = self.sink.get(name, 0.0) + time.perf_counter() - t0


def resolve_spec(cfg: ExperimentConfig) -> RecurrenceSpec:
    if cfg.system in BUILTINS:
        return get_builtin(cfg.system)
    if "=" not in cfg.system:
        raise UsageError(f"unknown system {cfg.system!r}; give a builtin {sorted(BUILTINS)} or recurrence text")
    return parse_spec(cfg.system, initial_symbols=cfg.initial_symbols or None, initial_index=cfg.initial_index)


def recurrence_units(spec: RecurrenceSpec, vars, choice: str) -> UnitSpec:
    """Monomials in the initial symbols; factors in the parameters alone are units too."""
    if choice not in ("auto", "R"):
        raise UsageError(f"unit spec {choice!r} applies to lattice systems only")
    names = set(vars.names)
    return UnitSpec(frozenset(spec.initial_symbols) & names, frozenset(spec.parameters) & names, (), "R")


def _label(k):
    return list(k) if isinstance(k, tuple) else k


def _matrix(verdicts: dict) -> list:
    out = []
    for (a, b), v in verdicts.items():
        row = {"pair": [_label(a), _label(b)], "verdict": "coprime" if v.coprime else "not-coprime"}
        if not v.coprime:
            row["witness"] = v.witness.to_text()
            row["parts"] = v.pair
        out.append(row)
    return out


def _degrees_section(growth) -> tuple[list, list]:
    rows = [
        {"index": _label(k), "degree": d, "numerator": n, "denominator": m}
        for k, d, n, m in zip(growth.labels, growth.degrees, growth.numerator_degrees, growth.denominator_degrees)
    ]
    ratios = [None if r is None else round(r, RATIO_DIGITS) for r in growth.ratios]
    return rows, ratios


def run(cfg: ExperimentConfig) -> RunResult:
    if cfg.kind == LATTICE:
        return _run_lattice(cfg)
    return _run_recurrence(cfg)


# recurrences


def _run_recurrence(cfg: ExperimentConfig) -> RunResult:
    res = RunResult(cfg)
    clock = _Clock(res.timings)
    spec = clock("parse", resolve_spec, cfg)
    first_free = spec.initial_index + spec.order
    if cfg.horizon < first_free - 1:
        raise UsageError(f"horizon {cfg.horizon} is shorter than the initial data (order {spec.order})")
    count = cfg.horizon - spec.initial_index + 1
    res.sections["system"] = {"name": spec.name, "text": spec.text, "initial_index": spec.initial_index,
                              "initial_symbols": list(spec.initial_symbols), "parameters": list(spec.parameters)}
    symbolic = [c for c in cfg.checks if c != "integer-seq"]
    seq = clock("evolve", evolve, spec, count) if symbolic or not cfg.checks else None
    u = recurrence_units(spec, seq.vars, cfg.units) if seq is not None else None
    free = [n for n in range(first_free, cfg.horizon + 1)]
    table = None
    pairs = None

    def need_table():
        nonlocal table
        if table is None:
            table = clock("confinement", confinement_table, seq, u, cfg.radius)
            res.sections["factors"] = [
                {"poly": d.poly.to_text(), "entry": d.entry,
                 "profile": {str(k): v for k, v in sorted(p.window.items())}, "class": p.label}
                for d, p in table
            ]
            res.valuation_rows = [(d.poly.to_text(), k, v) for d, p in table for k, v in sorted(p.window.items())]
        return table

    def need_pairs():
        nonlocal pairs
        if pairs is None:
            pairs = clock("coprime", coprime_pairs, [(n, seq[n]) for n in free], u)
            res.sections["coprime_matrix"] = _matrix(pairs)
        return pairs

    for check in cfg.checks:
        if check == "integer-seq":
            res.checks.append(clock(check, _integer_seq, spec, cfg, count, first_free, res))
        elif check == "laurent":
            bad = clock(check, lambda: [n for n in free if not is_laurent(seq[n], u)])
            detail = f"{len(free)} terms Laurent under {u.name}" if not bad else f"not Laurent at {bad}"
            res.checks.append(CheckResult(check, not bad, detail))
        elif check in ("coprime", "noncoprime"):
            verdicts = need_pairs()
            good = [k for k, v in verdicts.items() if v.coprime]
            if check == "coprime":
                bad = [k for k, v in verdicts.items() if not v.coprime]
                detail = f"{len(verdicts)} pairs co-prime" if not bad else f"{len(bad)} pairs share factors, first {bad[0]}"
            else:
                bad = good
                detail = f"no co-prime pair among {len(verdicts)}" if not bad else f"{len(bad)} co-prime pairs, first {bad[0]}"
            res.checks.append(CheckResult(check, not bad, detail))
        elif check in ("confinement", "divergence"):
            tab = need_table()
            res.checks.append(_confinement_check(check, tab))
        elif check == "irreducible":
            res.checks.append(clock(check, _irreducible, seq, free, u, cfg.seed, res))
        elif check == "degrees":
            growth = clock(check, degree_growth, seq)
            rows, ratios = _degrees_section(growth)
            res.sections["degrees"] = rows
            res.sections["degree_ratios_approx"] = ratios
            res.checks.append(CheckResult(check, True, "degrees " + ",".join(map(str, growth.degrees))))
    res.sequence = seq
    if seq is not None and not cfg.checks:
        res.sections["terms"] = [{"index": n, "value": seq.rational(n).to_text()} for n in seq.indices()]
    return res


def _integer_seq(spec, cfg, count, first_free, res) -> CheckResult:
    if spec.parameters:
        raise UsageError("integer-seq needs a recurrence without symbolic parameters")
    init = [Fraction(v) for v in cfg.initial] if cfg.initial else [Fraction(1)] * spec.order
    try:
        orbit = numeric_evolve(spec, init, count)
    except SingularEvolution as e:
        return CheckResult("integer-seq", False, f"orbit hits a singularity: {e}")
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad initial values: {e}") from None
    res.sections["orbit"] = [str(v) for v in orbit]
    bad = [spec.initial_index + i for i, v in enumerate(orbit) if v.denominator != 1]
    shown = ",".join(str(v) for v in orbit[first_free - spec.initial_index:])
    if bad:
        return CheckResult("integer-seq", False, f"non-integer at {bad}: {shown}")
    return CheckResult("integer-seq", True, shown)


def _confinement_check(name, table) -> CheckResult:
    unconfined = [(d, p) for d, p in table if p.classification == UNCONFINED]
    if name == "confinement":
        if unconfined:
            d, p = unconfined[0]
            return CheckResult(name, False, f"{d.poly.to_text()} is unconfined, |ord| = {_csv(p.magnitudes)}")
        parts = [f"{d.entry}:{p.label}{_ords(p.block_ords)}" for d, p in table]
        return CheckResult(name, True, "; ".join(parts) if parts else "no shared factor")
    if not unconfined:
        return CheckResult(name, False, "every discovered factor is confined or inconclusive")
    d, p = unconfined[0]
    return CheckResult(name, True, f"{d.poly.to_text()} unconfined from {d.entry}, |ord| = {_csv(p.magnitudes)}")


def _csv(xs) -> str:
    return ",".join(str(x) for x in xs)


def _ords(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")" if xs else ""


def _irreducible(seq, free, u, seed, res) -> CheckResult:
    rows = []
    bad = []
    for n in free:
        num = seq.rational(n).num
        try:
            v = irreducible_certify(num, u, seed=seed)
        except UsageError:
            rows.append({"term": n, "verdict": "unit"})
            continue
        row = {"term": n, "verdict": v.kind}
        if v.certificate is not None:
            row["certificate"] = v.certificate.to_json()
        if v.witness is not None:
            row["witness"] = v.witness.to_text()
        if v.kind == "unknown":
            row["retries"] = v.retries
        rows.append(row)
        if not v.irreducible:
            bad.append(n)
    res.sections["irreducibility"] = rows
    if bad:
        return CheckResult("irreducible", False, f"numerators not certified at {bad}")
    return CheckResult("irreducible", True, f"numerators of terms {free[0]}..{free[-1]} certified")


# lattice


class _Lattice:
    """Lazily computed windows shared between the lattice checks."""

    def __init__(self, cfg: ExperimentConfig, clock: _Clock):
        from . import dkdv

        self.dkdv = dkdv
        self.cfg = cfg
        self.clock = clock
        self._cache = {}

    def _get(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    def tables(self):
        def make():
            t = self.clock("tables", self.dkdv.boundary_transform, self.cfg.mmax, self.cfg.nmax, self.cfg.delta)
            bad = t.identity_failures()
            if bad:
                raise CoprimalityLabError(f"boundary tables violate their identities: {bad}")
            return t

        return self._get("tables", make)

    def w(self):
        c = self.cfg
        return self._get("w", lambda: self.clock(
            "nonlinear", self.dkdv.evolve_nonlinear, self.tables().nonlinear_boundary(), c.mmax, c.nmax))

    def a(self):
        c = self.cfg
        return self._get("a", lambda: self.clock(
            "bilinear", self.dkdv.evolve_bilinear, self.tables().bilinear_boundary(), c.mmax, c.nmax + 1))

    def a_tilde(self):
        c = self.cfg
        return self._get("a~", lambda: self.clock(
            "tilde", self.dkdv.evolve_bilinear_tilde, self.tables().tilde_boundary(), c.mmax, c.nmax + 1))

    def w_bilinear(self):
        return self._get("wb", lambda: self.clock("w_from_a", self.dkdv.w_from_a, self.a()).restrict(self.w().cells()))

    def w_tilde(self):
        return self._get("wt", lambda: self.clock(
            "w_from_a_tilde", self.dkdv.w_from_a_tilde, self.a_tilde()).restrict(self.w().cells()))

    def window(self):
        """The window named by the configured system."""
        return {"bilinear": self.a, "tilde": self.a_tilde}.get(self.cfg.system, self.w)()


def _run_lattice(cfg: ExperimentConfig) -> RunResult:
    from . import dkdv

    res = RunResult(cfg)
    clock = _Clock(res.timings)
    dkdv.parse_delta(cfg.delta)
    res.sections["system"] = {"name": cfg.system, "window": {"m": [1, cfg.mmax], "n": [0, cfg.nmax]},
                              "delta": cfg.delta}
    lat = _Lattice(cfg, clock)
    for check in cfg.checks:
        try:
            if check == "pipeline":
                res.checks.append(_pipeline(lat))
            elif check == "residual":
                res.checks.append(_residual(lat))
            elif check == "laurent":
                res.checks.append(_lattice_laurent(cfg, clock))
            elif check == "coprime":
                res.checks.append(_lattice_coprime(cfg, lat, clock, res))
        except SingularEvolution as e:
            res.checks.append(CheckResult(check, False, f"evolution hits a singular cell: {e}"))
    if cfg.window_out or not cfg.checks:
        res.window = lat.window()
    if "w" in lat._cache:
        rows, _ = _degrees_section(degree_growth(lat._cache["w"]))
        res.sections["degrees"] = rows
    return res


def window_json(window) -> dict:
    """Canonical text of every cell, keyed "m,n"."""
    return {"kind": window.kind, "cells": {f"{m},{n}": v.to_rational().to_text() if hasattr(v, "to_rational") else str(v)
                                           for (m, n), v in window.items()}}


def _pipeline(lat: _Lattice) -> CheckResult:
    d = lat.dkdv
    w, wb, wt, a, at = lat.w(), lat.w_bilinear(), lat.w_tilde(), lat.a(), lat.a_tilde()
    mism = {"bilinear": d.window_mismatches(w, wb), "tilde": d.window_mismatches(w, wt)}
    fails = {
        "bilinear": lat.clock("residuals", d.bilinear_residual_failures, a),
        "tilde": lat.clock("residuals", d.tilde_residual_failures, at),
        "nonlinear": lat.clock("residuals", d.nonlinear_residual_failures, wb),
    }
    problems = [f"{k} differs at {v}" for k, v in mism.items() if v]
    problems += [f"{k} residual nonzero at {v}" for k, v in fails.items() if v]
    if problems:
        return CheckResult("pipeline", False, "; ".join(problems))
    return CheckResult("pipeline", True, f"three routes agree on {len(w)} cells; residuals vanish")


def _residual(lat: _Lattice) -> CheckResult:
    d = lat.dkdv
    system = lat.cfg.system
    fails, sizes = {}, []
    if system in ("dkdv", "bilinear"):
        fails["bilinear"] = lat.clock("residuals", d.bilinear_residual_failures, lat.a())
        sizes.append(len(lat.a()))
    if system in ("dkdv", "tilde"):
        fails["tilde"] = lat.clock("residuals", d.tilde_residual_failures, lat.a_tilde())
        sizes.append(len(lat.a_tilde()))
    if system in ("dkdv", "nonlinear"):
        # the nonlinear equation is checked on w built from the bilinear lattice, an independent route
        fails["nonlinear"] = lat.clock("residuals", d.nonlinear_residual_failures, lat.w_bilinear())
        sizes.append(len(lat.w_bilinear()))
    bad = [f"{k} at {v}" for k, v in fails.items() if v]
    if bad:
        return CheckResult("residual", False, "; ".join(bad))
    return CheckResult("residual", True, f"{', '.join(fails)} residuals vanish on {sum(sizes)} cells")


def _lattice_laurent(cfg, clock) -> CheckResult:
    from . import dkdv

    if cfg.system not in ("dkdv", "bilinear"):
        raise UsageError("the Laurent check applies to the bilinear lattice")
    top = cfg.max_sum if cfg.max_sum is not None else cfg.mmax + cfg.nmax
    t = clock("laurent", dkdv.boundary_transform, top, max(top - 1, 1), cfg.delta)
    a = clock("laurent", dkdv.evolve_bilinear, t.bilinear_boundary(), top, top, max_sum=top)
    choice = "B" if cfg.units == "auto" else cfg.units
    if choice == "B":
        u = dkdv.ring_B(t)
    elif choice == "w-monomial":
        u = dkdv.w_monomial_units(t.basis.vars)
    else:
        raise UsageError(f"unit spec {choice!r} does not apply to the a-lattice")
    cells = [c for c in a.cells() if c[0] >= 1 and c[1] >= 1]
    bad = clock("laurent", lambda: [c for c in cells if not is_laurent(a[c], u)])
    if bad:
        return CheckResult("laurent", False, f"not Laurent under {u.name} at {bad[:5]}")
    return CheckResult("laurent", True, f"{len(cells)} cells with m+n <= {top} Laurent under {u.name}")


def _lattice_coprime(cfg, lat: _Lattice, clock, res) -> CheckResult:
    from . import dkdv

    w = lat.w()
    t = lat.tables()
    choice = "w-monomial" if cfg.units == "auto" else cfg.units
    if choice == "w-monomial":
        u = dkdv.w_monomial_units(t.basis.vars)
    elif choice == "B":
        u = dkdv.ring_B(t)
    elif choice == "B-tilde":
        u = dkdv.ring_B_tilde(t)
    else:
        raise UsageError(f"unit spec {choice!r} does not apply to the w-lattice")
    items = w.items()
    sep = clock("coprime", coprime_pairs, items, u, keep=separated)
    diag = clock("coprime", coprime_pairs, items, u,
                 keep=lambda a, b: abs(a[0] - b[0]) == 1 and abs(a[1] - b[1]) == 1)
    res.sections["coprime_matrix"] = _matrix(sep)
    res.sections["diagonal_pairs"] = _matrix(diag)
    bad = [k for k, v in sep.items() if not v.coprime]
    shared = sum(not v.coprime for v in diag.values())
    if bad:
        return CheckResult("coprime", False, f"{len(bad)} separated pairs share factors, first {bad[0]}")
    return CheckResult("coprime", True, f"{len(sep)} separated pairs co-prime under {u.name}; "
                                        f"{shared} of {len(diag)} diagonal pairs share factors (reported only)")
