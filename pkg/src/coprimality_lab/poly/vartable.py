"""Ordered variable alphabets and the packed monomial encoding built on them.

A monomial is stored as one Python integer.  Each variable owns a fixed-width
bit field; the total degree sits in the most significant field, followed by
the variables in table order.  Comparing two packed keys as integers is then
exactly graded lexicographic comparison, multiplying monomials is integer
addition, and divisibility is a single guarded subtraction.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import UsageError

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


class VarTable:
    """An immutable, ordered list of distinct variable names.

    Tables are append-only in the sense that :meth:`extend` returns a new
    table in which every existing variable keeps its index.
    """

    __slots__ = ("names", "index", "arity", "_shifts", "_total_shift", "_guard", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for name in names:
            if not isinstance(name, str) or not name:
                raise UsageError(f"variable names must be non-empty strings, got {name!r}")
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        self.names = names
        self.index = index
        self.arity = len(names)
        self._shifts = tuple((self.arity - 1 - i) * FIELD_BITS for i in range(self.arity))
        self._total_shift = self.arity * FIELD_BITS
        guard = 0
        for f in range(self.arity + 1):
            guard |= 1 << (f * FIELD_BITS + FIELD_BITS - 1)
        self._guard = guard
        self._hash = hash(names)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.arity

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.index

    def __repr__(self):
        return f"VarTable({list(self.names)!r})"

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    def extend(self, *names: str) -> "VarTable":
        """Return a table with ``names`` appended (already present names are skipped)."""
        fresh = [n for n in names if n not in self.index]
        if not fresh:
            return self
        return VarTable(self.names + tuple(dict.fromkeys(fresh)))

    # packed monomial keys

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.arity:
            raise UsageError(f"exponent vector of length {len(exps)} for arity {self.arity}")
        key = 0
        total = 0
        for e, s in zip(exps, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise UsageError(f"exponent {e} out of range")
            key |= e << s
            total += e
        if total > MAX_EXPONENT:
            raise UsageError(f"total degree {total} out of range")
        return key | (total << self._total_shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & FIELD_MASK for s in self._shifts)

    def key_degree(self, key: int) -> int:
        return key >> self._total_shift

    def var_key(self, i: int, e: int = 1) -> int:
        return (e << self._shifts[i]) | (e << self._total_shift)

    def divides_key(self, small: int, big: int) -> bool:
        g = self._guard
        return ((big | g) - small) & g == g

    def remap(self, other: "VarTable"):
        """Return a function translating keys of ``self`` into keys of ``other``."""
        if other == self:
            return lambda key: key
        positions = [other.position(n) for n in self.names]
        shifts = self._shifts
        oshifts = other._shifts
        ototal = other._total_shift
        mytotal = self._total_shift

        def translate(key: int) -> int:
            out = (key >> mytotal) << ototal
            for s, j in zip(shifts, positions):
                e = (key >> s) & FIELD_MASK
                if e:
                    out |= e << oshifts[j]
            return out

        return translate
