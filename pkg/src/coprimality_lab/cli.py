"""Command-line driver: ``coprimality-lab evolve|analyze|lattice|run|report diff``."""

from __future__ import annotations

import json
import sys

import click

from .config import ExperimentConfig, load_config
from .errors import CoprimalityLabError, ParseError, UsageError
from .experiments import run, window_json
from .report import (
    build_report,
    compare_golden,
    diff_reports,
    golden_path,
    load_report,
    write_report,
    write_valuation_csv,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _split(values) -> tuple:
    out = []
    for v in values or ():
        out.extend(s.strip() for s in v.split(",") if s.strip())
    return tuple(out)


def _config(config_path, default_checks=(), **fields) -> ExperimentConfig:
    fields = {k: v for k, v in fields.items() if v not in (None, ())}
    cfg = load_config(config_path, **fields) if config_path else ExperimentConfig(**fields)
    if not cfg.checks and default_checks:
        cfg = cfg.with_overrides(checks=tuple(default_checks))
    return cfg


def _execute(cfg: ExperimentConfig, timings: bool, show_terms: bool = False, write_golden: bool = False) -> int:
    result = run(cfg)
    report = build_report(result, timings=timings)
    title = result.sections.get("system", {}).get("name", cfg.system)
    span = f"horizon {cfg.horizon}" if cfg.kind == "recurrence" else f"window m<={cfg.mmax}, n<={cfg.nmax}"
    click.echo(f"{title}  ({span}, seed {cfg.seed})")
    if show_terms and result.sequence is not None:
        for n in result.sequence.indices():
            click.echo(f"  [{n}] {result.sequence.rational(n).to_text()}")
    for c in result.checks:
        click.echo(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<12} {c.detail}")
    golden_failed = False
    if cfg.golden_dir:
        path = golden_path(report, cfg.golden_dir, cfg.digest())
        diffs = None if write_golden else compare_golden(report, path)
        if diffs is None:
            write_report(build_report(result), path)
            click.echo(f"golden written to {path}")
        elif diffs:
            click.echo(f"FAIL  golden       {len(diffs)} differences from {path}, first at {diffs[0]['path']}")
            report["passed"] = False
            golden_failed = True
        else:
            click.echo(f"PASS  golden       matches {path}")
    if cfg.report:
        write_report(report, cfg.report)
    if cfg.csv:
        write_valuation_csv(result.valuation_rows, cfg.csv)
    if cfg.window_out and result.window is not None:
        write_report(window_json(result.window), cfg.window_out)
    if timings:
        for k, v in sorted(result.timings.items()):
            click.echo(f"  {k:<14} {v:8.3f} s")
    failed = result.first_failure
    name = failed.name if failed is not None else ("golden" if golden_failed else None)
    if name is not None:
        click.echo(f"first failing check: {name}", err=True)
        return EXIT_FAIL
    return EXIT_OK


def _guard(fn):
    """Map package errors to exit code 2 and everything checked to 0/1."""

    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except (UsageError, ParseError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_CONFIG)
        except CoprimalityLabError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_FAIL)
        sys.exit(code)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _common(f):
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), help="key = value config file"),
        click.option("--check", "checks", multiple=True, help="check to run (repeat or comma-separate)"),
        click.option("--seed", type=int, help="random seed (default from COPRIMALITY_LAB_SEED, else 0)"),
        click.option("--units", type=click.Choice(["auto", "R", "B", "B-tilde", "w-monomial"])),
        click.option("--report", "report_path", type=click.Path(dir_okay=False), help="write the JSON report here"),
        click.option("--golden", "golden_dir", type=click.Path(file_okay=False), help="golden directory"),
        click.option("--write-golden", is_flag=True, help="overwrite the golden file for this config"),
        click.option("--timings", is_flag=True, help="print and record wall time per phase"),
    ]
    for opt in reversed(options):
        f = opt(f)
    return f


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact evolution of recurrences and lattice equations with co-primeness checks."""


@main.command()
@click.argument("system")
@click.option("--n", "horizon", type=int, help="last term index")
@click.option("--initial", multiple=True, help="numeric initial values for integer-seq")
@click.option("--initial-symbols", multiple=True, help="names of the initial terms (custom recurrences)")
@click.option("--initial-index", type=int, help="index of the first initial term")
@click.option("--show-terms", is_flag=True, help="print every symbolic term")
@_common
@_guard
def evolve(system, horizon, initial, initial_symbols, initial_index, show_terms, config_path, checks, seed, units,
           report_path, golden_dir, write_golden, timings):
    """Evolve a recurrence (builtin name or 'x[n+1] = ...' text)."""
    cfg = _config(config_path, system=system, horizon=horizon, checks=_split(checks), seed=seed, units=units,
                  initial=_split(initial), initial_symbols=_split(initial_symbols), initial_index=initial_index,
                  report=report_path, golden_dir=golden_dir)
    return _execute(cfg, timings, show_terms=show_terms or not cfg.checks, write_golden=write_golden)


@main.command()
@click.argument("system")
@click.option("--horizon", type=int, help="last term index")
@click.option("--radius", type=int, help="only compare terms this close when discovering factors")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="write the valuation table as CSV")
@click.option("--initial-symbols", multiple=True)
@click.option("--initial-index", type=int)
@_common
@_guard
def analyze(system, horizon, radius, csv_path, initial_symbols, initial_index, config_path, checks, seed, units,
            report_path, golden_dir, write_golden, timings):
    """Valuations, co-primeness, confinement and irreducibility of a recurrence."""
    cfg = _config(config_path, system=system, horizon=horizon, radius=radius, csv=csv_path,
                  checks=_split(checks), default_checks=("confinement",), seed=seed, units=units,
                  initial_symbols=_split(initial_symbols), initial_index=initial_index,
                  report=report_path, golden_dir=golden_dir)
    return _execute(cfg, timings, write_golden=write_golden)


@main.command()
@click.option("--system", type=click.Choice(["dkdv", "bilinear", "nonlinear", "tilde"]), default="dkdv",
              show_default=True, help="dkdv runs all three forms")
@click.option("--mmax", type=int, help="largest m of the w-window")
@click.option("--nmax", type=int, help="largest n of the w-window")
@click.option("--max-sum", type=int, help="m + n bound for the Laurent check (default mmax + nmax)")
@click.option("--delta", help="'symbolic' or a rational value")
@click.option("--window", "window_out", type=click.Path(dir_okay=False), help="write the window as JSON keyed 'm,n'")
@_common
@_guard
def lattice(system, mmax, nmax, max_sum, delta, window_out, config_path, checks, seed, units, report_path, golden_dir,
            write_golden, timings):
    """Discrete KdV on the quarter lattice: pipeline, residual, laurent and coprime checks."""
    cfg = _config(config_path, system=system, mmax=mmax, nmax=nmax, max_sum=max_sum, delta=delta, window_out=window_out,
                  checks=_split(checks), default_checks=("pipeline",), seed=seed, units=units, report=report_path,
                  golden_dir=golden_dir)
    return _execute(cfg, timings, write_golden=write_golden)


@main.command(name="run")
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--report", "report_path", type=click.Path(dir_okay=False))
@click.option("--timings", is_flag=True)
@_guard
def run_config(config_path, report_path, timings):
    """Run everything a config file asks for."""
    cfg = load_config(config_path, report=report_path)
    return _execute(cfg, timings)


@main.group()
def report():
    """Work with JSON reports."""


@report.command()
@click.argument("a", type=click.Path(dir_okay=False))
@click.argument("b", type=click.Path(dir_okay=False))
@click.option("--verdicts-only", is_flag=True, help="ignore certificate contents")
@_guard
def diff(a, b, verdicts_only):
    """Field-level differences between two reports; exit 1 when they differ."""
    diffs = diff_reports(load_report(a), load_report(b), verdicts_only=verdicts_only)
    for d in diffs:
        click.echo(json.dumps(d, ensure_ascii=False))
    if not diffs:
        click.echo("no differences")
    return EXIT_FAIL if diffs else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    main()
