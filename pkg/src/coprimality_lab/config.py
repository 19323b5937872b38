"""Experiment configuration: a dataclass plus a plain ``key = value`` text format."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field, fields, replace

from .errors import UsageError

SEED_ENV = "COPRIMALITY_LAB_SEED"

RECURRENCE = "recurrence"
LATTICE = "lattice"
LATTICE_SYSTEMS = ("dkdv", "bilinear", "nonlinear", "tilde")

UNIT_SPECS = ("auto", "R", "B", "B-tilde", "w-monomial")

RECURRENCE_CHECKS = ("integer-seq", "laurent", "coprime", "noncoprime", "confinement", "divergence",
                     "irreducible", "degrees")
LATTICE_CHECKS = ("pipeline", "residual", "laurent", "coprime")

# fields that only say where output goes; they do not change results
OUTPUT_FIELDS = ("report", "csv", "golden_dir", "window_out")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class ExperimentConfig:
    system: str
    horizon: int | None = None
    mmax: int = 5
    nmax: int = 4
    max_sum: int | None = None
    delta: str = "symbolic"
    units: str = "auto"
    checks: tuple = ()
    seed: int = field(default_factory=default_seed)
    initial: tuple = ()
    initial_symbols: tuple = ()
    initial_index: int = 0
    radius: int | None = None
    report: str | None = None
    csv: str | None = None
    golden_dir: str | None = None
    window_out: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(self.checks))
        object.__setattr__(self, "initial", tuple(str(v) for v in self.initial))
        object.__setattr__(self, "initial_symbols", tuple(self.initial_symbols))
        if not self.system or not str(self.system).strip():
            raise UsageError("exactly one system is required")
        if self.units not in UNIT_SPECS:
            raise UsageError(f"unknown unit spec {self.units!r}; choose from {list(UNIT_SPECS)}")
        allowed = LATTICE_CHECKS if self.kind == LATTICE else RECURRENCE_CHECKS
        for c in self.checks:
            if c not in allowed:
                raise UsageError(f"check {c!r} does not apply to a {self.kind}; choose from {list(allowed)}")
        if len(set(self.checks)) != len(self.checks):
            raise UsageError("a check is listed twice")
        if self.kind == LATTICE:
            if self.mmax < 1 or self.nmax < 0:
                raise UsageError("the lattice window needs mmax >= 1 and nmax >= 0")
        elif self.horizon is None:
            raise UsageError("a recurrence needs a horizon")
        if self.radius is not None and self.radius < 1:
            raise UsageError("the discovery radius must be positive")

    @property
    def kind(self) -> str:
        return LATTICE if self.system in LATTICE_SYSTEMS else RECURRENCE

    def results_view(self) -> dict:
        """Fields that determine the results, in canonical order."""
        return {f.name: _plain(getattr(self, f.name)) for f in fields(self) if f.name not in OUTPUT_FIELDS}

    def to_dict(self) -> dict:
        return {f.name: _plain(getattr(self, f.name)) for f in fields(self)}

    def to_text(self) -> str:
        lines = []
        for key, value in self.to_dict().items():
            if value is None or value == []:
                continue
            if isinstance(value, list):
                value = ", ".join(str(v) for v in value)
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        text = "\n".join(f"{k}={v!r}" for k, v in self.results_view().items())
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def with_overrides(self, **changes) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _plain(v):
    return list(v) if isinstance(v, tuple) else v


_INT_FIELDS = {"horizon", "mmax", "nmax", "max_sum", "seed", "initial_index", "radius"}
_LIST_FIELDS = {"checks", "initial", "initial_symbols"}


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; lists are comma-separated."""
    known = {f.name for f in fields(ExperimentConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected 'key = value'")
        # only the first '=' separates; recurrence text keeps its own
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        if key in out:
            raise UsageError(f"config line {lineno}: {key!r} given twice")
        if key in _INT_FIELDS:
            try:
                value = int(value, 0)
            except ValueError:
                raise UsageError(f"config line {lineno}: {key} must be an integer") from None
        elif key in _LIST_FIELDS:
            value = tuple(v.strip() for v in value.split(",") if v.strip())
        out[key] = value
    return out


def load_config(path: str, **overrides) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = parse_config_text(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror}") from None
    data.update({k: v for k, v in overrides.items() if v is not None})
    if "system" not in data:
        raise UsageError("the config does not name a system")
    return ExperimentConfig(**data)
