"""Recurrence specifications parsed from text."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ParseError, UsageError
from ..poly import VarTable
from ..ring import RationalFunction
from .expr import Ref, Sym, evaluate_ast, parse_equation, walk


@dataclass(frozen=True)
class RecurrenceSpec:
    """A rational recurrence ``term[n] = update(term[n-1], ..., term[n-order])``.

    ``initial_symbols[i]`` names the term with index ``initial_index + i``.
    ``variables`` fixes the variable order used for canonical output.
    """

    text: str
    name: str
    term: str
    order: int
    lhs_offset: int
    rhs: object = field(repr=False, compare=False)
    initial_symbols: tuple
    initial_index: int = 0
    parameters: tuple = ()
    variables: tuple = ()

    def __post_init__(self):
        if self.order < 1:
            raise UsageError("recurrence order must be at least 1")
        if len(self.initial_symbols) != self.order:
            raise UsageError(f"need {self.order} initial symbols, got {len(self.initial_symbols)}")
        if len(set(self.initial_symbols)) != self.order:
            raise UsageError("initial symbols must be distinct")
        if not self.variables:
            object.__setattr__(self, "variables", tuple(self.initial_symbols) + tuple(self.parameters))
        if set(self.variables) != set(self.initial_symbols) | set(self.parameters):
            raise UsageError("variables must list exactly the initial symbols and parameters")

    def vartable(self) -> VarTable:
        return VarTable(self.variables)

    def slot_of(self, ref: Ref) -> int:
        """Slot number of a right-hand reference (0 = most recent term)."""
        return self.lhs_offset - ref.offset - 1

    def apply(self, previous, symbol, const):
        """Evaluate the update; ``previous[i]`` is slot i (0 = most recent)."""
        return evaluate_ast(self.rhs, lambda r: previous[self.slot_of(r)], symbol, const)

    def update_rational(self) -> RationalFunction:
        """The update as a reduced rational function in formal slots X0..X{k-1}."""
        names = tuple(f"X{i}" for i in range(self.order)) + tuple(self.parameters)
        vt = VarTable(names)
        slots = [RationalFunction.gen(vt, f"X{i}") for i in range(self.order)]
        return self.apply(
            slots,
            lambda s: RationalFunction.gen(vt, s),
            lambda c: RationalFunction.constant(vt, c),
        )


def parse_spec(
    text: str,
    initial_symbols=None,
    initial_index: int = 0,
    name: str | None = None,
    variables=None,
) -> RecurrenceSpec:
    """Parse ``term[n+j] = expression`` into a validated spec.

    Without ``initial_symbols`` the initial terms are named ``<term><index>``.
    Plain names on the right-hand side become symbolic parameters.
    """
    lhs, rhs = parse_equation(text)
    refs = [n for n in walk(rhs) if isinstance(n, Ref)]
    if not refs:
        raise ParseError("the right-hand side does not use any earlier term")
    for r in refs:
        if r.name != lhs.name:
            raise ParseError(f"unknown sequence {r.name!r} (expected {lhs.name!r})")
        if r.offset >= lhs.offset:
            raise ParseError(f"{r.name}[n{r.offset:+d}] is not earlier than the left-hand side")
    order = lhs.offset - min(r.offset for r in refs)
    params = []
    for n in walk(rhs):
        if isinstance(n, Sym) and n.name not in params:
            params.append(n.name)
    if initial_symbols is None:
        initial_symbols = tuple(f"{lhs.name}{initial_index + i}" for i in range(order))
    initial_symbols = tuple(initial_symbols)
    clash = set(params) & set(initial_symbols)
    if clash:
        raise ParseError(f"parameter names clash with initial symbols: {sorted(clash)}")
    spec = RecurrenceSpec(
        text=text.strip(),
        name=name or lhs.name,
        term=lhs.name,
        order=order,
        lhs_offset=lhs.offset,
        rhs=rhs,
        initial_symbols=initial_symbols,
        initial_index=initial_index,
        parameters=tuple(params),
        variables=tuple(variables) if variables else (),
    )
    try:
        update = spec.update_rational()
    except ZeroDivisionError:
        raise ParseError("the update divides by zero identically") from None
    if not update.den:  # pragma: no cover - reduce never leaves a zero denominator
        raise ParseError("zero denominator")
    return spec
