"""Symbolic and exact numeric evolution of one-dimensional recurrences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import OrbitZeroDivision, SingularEvolution, UsageError
from ..ring import FactorBasis, Factored, RationalFunction
from .spec import RecurrenceSpec


@dataclass(frozen=True)
class TermSequence:
    """Terms ``initial_index .. initial_index + len - 1`` of a recurrence.

    Values are kept factored over a shared basis; :meth:`rational` gives the
    reduced numerator/denominator form.
    """

    spec: RecurrenceSpec
    terms: tuple = field(repr=False)
    basis: FactorBasis = field(repr=False, compare=False)

    @property
    def vars(self):
        return self.basis.vars

    @property
    def first(self) -> int:
        return self.spec.initial_index

    @property
    def last(self) -> int:
        return self.first + len(self.terms) - 1

    def indices(self) -> range:
        return range(self.first, self.last + 1)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, n: int) -> Factored:
        """Term with index ``n`` (not a position)."""
        if not self.first <= n <= self.last:
            raise IndexError(f"term {n} outside {self.first}..{self.last}")
        return self.terms[n - self.first]

    def rational(self, n: int) -> RationalFunction:
        return self[n].to_rational()

    def items(self):
        return [(n, self[n]) for n in self.indices()]


def evolve(spec: RecurrenceSpec, count: int) -> TermSequence:
    """The first ``count`` terms with generic symbolic initial data."""
    if count < spec.order:
        raise UsageError(f"need at least {spec.order} terms, asked for {count}")
    vt = spec.vartable()
    basis = FactorBasis(vt)
    terms = [Factored.gen(basis, s) for s in spec.initial_symbols]
    params = {p: Factored.gen(basis, p) for p in spec.parameters}

    def const(c):
        return Factored.constant(basis, c)

    for pos in range(spec.order, count):
        prev = terms[::-1][: spec.order]
        try:
            value = spec.apply(prev, params.__getitem__, const)
        except ZeroDivisionError:
            raise SingularEvolution(spec.initial_index + pos) from None
        terms.append(value)
    return TermSequence(spec, tuple(terms), basis)


def numeric_evolve(
    spec: RecurrenceSpec,
    init: Sequence,
    count: int,
    params: Mapping[str, object] | None = None,
) -> list[Fraction]:
    """Exact rational orbit from numeric initial values."""
    if len(init) != spec.order:
        raise UsageError(f"need {spec.order} initial values")
    if count < spec.order:
        raise UsageError(f"need at least {spec.order} terms, asked for {count}")
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    missing = set(spec.parameters) - set(params)
    if missing:
        raise UsageError(f"unassigned parameters: {sorted(missing)}")
    terms = [Fraction(v) for v in init]
    for pos in range(spec.order, count):
        prev = terms[::-1][: spec.order]
        try:
            terms.append(spec.apply(prev, params.__getitem__, Fraction))
        except ZeroDivisionError:
            raise OrbitZeroDivision(spec.initial_index + pos) from None
    return terms
