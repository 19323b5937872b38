"""Shared-factor discovery and valuation windows of singular factors."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UsageError
from ..poly import MultiPoly
from ..ring import UnitSpec, split_units
from ._values import common_factored, label_distance, labelled_items
from .valuation import valuation

CONFINED = "confined"
UNCONFINED = "unconfined"
INCONCLUSIVE = "inconclusive"

# zero terms required on each side of a block before it counts as confined
DEFAULT_MARGIN = 2


def laurent_units(vars) -> UnitSpec:
    return UnitSpec(monomial_vars=frozenset(vars.names), name="R")


@dataclass(frozen=True)
class DiscoveredFactor:
    poly: MultiPoly
    entry: object
    labels: tuple


def _key(poly: MultiPoly):
    return poly.degree(), poly.to_text()


def discover_factor_entries(source, radius: int | None = None, units: UnitSpec | None = None,
                            select=None) -> list[DiscoveredFactor]:
    """Non-unit factors shared by at least two terms within ``radius`` of each other.

    Each factor comes with the first label where it divides a term (in either
    numerator or denominator) and every label where it does.
    """
    items = labelled_items(source, select)
    if not items:
        return []
    labels = [k for k, _ in items]
    values = common_factored([v for _, v in items])
    vt = values[0].vars
    u = units if units is not None else laurent_units(vt)
    basis = values[0].basis
    leaf_sets = [set(v.exps) for v in values]
    mono_sets = [{i for i, e in enumerate(v.mono) if e} for v in values]
    found: dict[MultiPoly, set] = {}
    order = sorted(range(len(items)), key=lambda j: labels[j])
    for x, i in enumerate(order):
        for j in order[x + 1:]:
            if radius is not None and label_distance(labels[i], labels[j]) > radius:
                continue
            for leaf in leaf_sets[i] & leaf_sets[j]:
                rest = split_units(basis.poly(leaf), u).rest
                if not rest.is_constant():
                    found.setdefault(rest, set())
            for var in mono_sets[i] & mono_sets[j]:
                name = vt.names[var]
                if name not in u.monomial_vars and name not in u.coefficient_vars:
                    found.setdefault(MultiPoly.gen(vt, name), set())
    out = []
    for poly in found:
        hits = tuple(labels[j] for j in order if valuation(values[j], poly))
        out.append(DiscoveredFactor(poly, hits[0] if hits else None, hits))
    out.sort(key=lambda d: (d.entry is None, d.entry if d.entry is not None else 0, _key(d.poly)))
    return out


def discover_factors(source, radius: int | None = None, units: UnitSpec | None = None, select=None) -> list[MultiPoly]:
    """Primitive non-unit factors shared between terms, deduplicated up to sign."""
    return [d.poly for d in discover_factor_entries(source, radius, units, select)]


@dataclass(frozen=True)
class ConfinementProfile:
    factor: MultiPoly
    window: dict = field(repr=False)
    classification: str
    width: int | None = None
    block: tuple = ()

    @property
    def horizon(self) -> tuple:
        return min(self.window), max(self.window)

    @property
    def label(self) -> str:
        if self.classification == CONFINED:
            return f"confined({self.width})"
        if self.classification == UNCONFINED:
            return "unconfined(divergent)"
        return "inconclusive(horizon)"

    @property
    def block_ords(self) -> tuple:
        return tuple(self.window[n] for n in self.block)

    @property
    def magnitudes(self) -> tuple:
        """|ord| from the first index where the factor appears."""
        nz = [n for n in sorted(self.window) if self.window[n]]
        if not nz:
            return ()
        return tuple(abs(self.window[n]) for n in sorted(self.window) if n >= nz[0])


def classify(window: dict, factor: MultiPoly, margin: int = DEFAULT_MARGIN) -> ConfinementProfile:
    idx = sorted(window)
    if any(not isinstance(n, int) for n in idx):
        raise UsageError("confinement profiles need integer-indexed sequences")
    nz = [n for n in idx if window[n]]
    if not nz:
        return ConfinementProfile(factor, window, CONFINED, 0, ())
    lo, hi = idx[0], idx[-1]
    first, last = nz[0], nz[-1]
    block = tuple(range(first, last + 1))
    if first - lo >= margin and hi - last >= margin:
        return ConfinementProfile(factor, window, CONFINED, len(block), block)
    tail = [abs(window[n]) for n in range(first, hi + 1)]
    if len(tail) >= 3 and all(x < y for x, y in zip(tail, tail[1:])):
        return ConfinementProfile(factor, window, UNCONFINED, None, tuple(range(first, hi + 1)))
    return ConfinementProfile(factor, window, INCONCLUSIVE, None, block)


def confinement_profile(seq, factor: MultiPoly, margin: int = DEFAULT_MARGIN) -> ConfinementProfile:
    """Valuation window of ``factor`` over every term and its classification."""
    window = {n: valuation(v, factor) for n, v in seq.items()}
    return classify(window, factor, margin)


def confinement_table(seq, units: UnitSpec | None = None, radius: int | None = None,
                      margin: int = DEFAULT_MARGIN) -> list[tuple[DiscoveredFactor, ConfinementProfile]]:
    """Every discovered factor of a sequence with its profile, ordered by entry index."""
    return [(d, confinement_profile(seq, d.poly, margin)) for d in discover_factor_entries(seq, radius, units)]


def alternating_orders(d0: int, d1: int, first: int, last: int, coefficients=(2, 3)) -> dict:
    """d_first.. d_last from d_{m+2} = c d_{m+1} - d_m, c alternating with the parity of m."""
    d = {first: d0, first + 1: d1}
    for m in range(first, last - 1):
        d[m + 2] = coefficients[m % 2] * d[m + 1] - d[m]
    return {m: v for m, v in d.items() if m <= last}
