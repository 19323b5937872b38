"""Machine-readable reports: assembly, golden files, structured diffs, CSV export."""

from __future__ import annotations

import csv
import json
import os
from pathlib import Path

from . import __version__
from .errors import UsageError
from .experiments import RunResult

SCHEMA = "coprimality-lab/1"

# results sections in canonical order; absent sections are omitted
SECTIONS = ("system", "checks", "orbit", "terms", "factors", "coprime_matrix", "diagonal_pairs",
            "irreducibility", "degrees", "degree_ratios_approx")

# item keys used to align list entries when diffing
IDENTITY = {
    "factors": "poly",
    "coprime_matrix": "pair",
    "diagonal_pairs": "pair",
    "irreducibility": "term",
    "degrees": "index",
    "terms": "index",
    "checks": "name",
}

# report fields outside the results section
ENVELOPE = ("schema", "tool_version", "config", "seed", "timings")


def build_report(result: RunResult, timings: bool = False) -> dict:
    cfg = result.config
    out = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "system": None,
        "horizon": cfg.horizon if cfg.kind == "recurrence" else {"mmax": cfg.mmax, "nmax": cfg.nmax},
    }
    sections = dict(result.sections)
    sections["checks"] = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in result.checks]
    for key in SECTIONS:
        if key in sections:
            out[key] = sections[key]
    out["passed"] = result.passed
    if timings:
        out["timings"] = {k: round(v, 3) for k, v in sorted(result.timings.items())}
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def write_report(report: dict, path: str | os.PathLike) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(dumps(report), encoding="utf-8")


def load_report(path: str | os.PathLike) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise UsageError(f"cannot read report {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not a JSON report: {e}") from None


def results_of(report: dict) -> dict:
    return {k: v for k, v in report.items() if k not in ENVELOPE}


def _ident(item, key):
    v = item.get(key) if isinstance(item, dict) else None
    return json.dumps(v, sort_keys=True) if v is not None else None


def _diff(a, b, path: str, out: list, skip) -> None:
    if skip(path):
        return
    if isinstance(a, dict) and isinstance(b, dict):
        for k in list(a) + [k for k in b if k not in a]:
            sub = f"{path}.{k}" if path else str(k)
            if k not in a:
                if not skip(sub):
                    out.append({"path": sub, "a": None, "b": b[k]})
            elif k not in b:
                if not skip(sub):
                    out.append({"path": sub, "a": a[k], "b": None})
            else:
                _diff(a[k], b[k], sub, out, skip)
        return
    top = path.split(".")[0].split("[")[0]
    key = IDENTITY.get(top) if "[" not in path and "." not in path else None
    if isinstance(a, list) and isinstance(b, list) and key:
        ia = {_ident(x, key): x for x in a}
        ib = {_ident(x, key): x for x in b}
        if None not in ia and None not in ib and len(ia) == len(a) and len(ib) == len(b):
            for k in list(ia) + [k for k in ib if k not in ia]:
                sub = f"{path}[{k}]"
                if k not in ia:
                    out.append({"path": sub, "a": None, "b": ib[k]})
                elif k not in ib:
                    out.append({"path": sub, "a": ia[k], "b": None})
                else:
                    _diff(ia[k], ib[k], sub, out, skip)
            return
    if isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
        for i, (x, y) in enumerate(zip(a, b)):
            _diff(x, y, f"{path}[{i}]", out, skip)
        return
    if a != b:
        out.append({"path": path, "a": a, "b": b})


def diff_reports(a: dict, b: dict, verdicts_only: bool = False) -> list[dict]:
    """Field-level differences between the results sections of two reports.

    With ``verdicts_only`` certificate contents (which depend on the seed) are
    ignored, as are the check details that embed them.
    """
    if a.get("schema") != b.get("schema"):
        raise UsageError(f"schema mismatch: {a.get('schema')!r} vs {b.get('schema')!r}")

    def skip(path: str) -> bool:
        return verdicts_only and path.endswith(".certificate")

    out: list[dict] = []
    _diff(results_of(a), results_of(b), "", out, skip)
    return out


def golden_path(report: dict, root: str | os.PathLike, digest: str) -> Path:
    return Path(root) / f"{digest}.json"


def compare_golden(report: dict, path: Path) -> list[dict] | None:
    """Differences against a stored golden report, or None when there is none yet."""
    if not path.exists():
        return None
    return diff_reports(load_report(path), report)


def write_valuation_csv(rows, path: str | os.PathLike) -> None:
    """One row per (factor, index, ord)."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["factor", "index", "ord"])
        for poly, index, ord_ in rows:
            w.writerow([poly, index, ord_])
