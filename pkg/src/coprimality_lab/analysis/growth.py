"""Degree growth of iterates, read off the factored form without expanding."""

from __future__ import annotations

from dataclasses import dataclass

from ..ring import Factored
from ._values import as_value


def _degrees(v) -> tuple[int, int]:
    v = as_value(v)
    if isinstance(v, Factored):
        basis = v.basis
        num = sum(e for e in v.mono if e > 0)
        den = sum(-e for e in v.mono if e < 0)
        for i, e in v.exps.items():
            d = basis.poly(i).degree()
            if e > 0:
                num += e * d
            else:
                den -= e * d
        return num, den
    return v.num.degree(), v.den.degree()


def term_degree(v) -> int:
    """max(deg numerator, deg denominator) in total degree."""
    return max(_degrees(v))


@dataclass(frozen=True)
class DegreeGrowth:
    labels: tuple
    degrees: tuple
    numerator_degrees: tuple
    denominator_degrees: tuple

    @property
    def differences(self) -> tuple:
        d = self.degrees
        return tuple(b - a for a, b in zip(d, d[1:]))

    @property
    def second_differences(self) -> tuple:
        d = self.differences
        return tuple(b - a for a, b in zip(d, d[1:]))

    @property
    def ratios(self) -> tuple:
        """Approximate successive ratios (None where the earlier degree is 0)."""
        d = self.degrees
        return tuple(b / a if a else None for a, b in zip(d, d[1:]))


def degree_growth(seq) -> DegreeGrowth:
    items = list(seq.items()) if hasattr(seq, "items") else list(seq)
    pairs = [_degrees(v) for _, v in items]
    return DegreeGrowth(
        tuple(k for k, _ in items),
        tuple(max(p) for p in pairs),
        tuple(p[0] for p in pairs),
        tuple(p[1] for p in pairs),
    )
