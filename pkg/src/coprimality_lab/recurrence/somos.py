"""Somos-4 specifics: backward evolution and the change of variables to the QRT map."""

from __future__ import annotations

from typing import Sequence

from ..errors import UsageError
from ..poly import MultiPoly, VarTable
from ..ring import FactorBasis, Factored
from .builtins import qrt2
from .evolve import TermSequence


def somos4_backward(window: Sequence, steps: int) -> list:
    """Given four consecutive terms y_k..y_{k+3}, return [y_{k-1}, y_{k-2}, ...].

    Works for any values supporting + * / (factored, rational, Fraction).
    """
    if len(window) != 4:
        raise UsageError("backward evolution needs exactly four consecutive terms")
    vals = list(window)
    out = []
    for _ in range(steps):
        prev = (vals[2] * vals[0] + vals[1] ** 2) / vals[3]
        out.append(prev)
        vals = [prev] + vals[:3]
    return out


def substitute_monomials(f: MultiPoly, images: dict, target: VarTable) -> tuple[MultiPoly, tuple]:
    """Substitute each variable by a signed monomial of ``target``.

    ``images`` maps a variable name of ``f`` to an exponent tuple over
    ``target`` (negative entries allowed).  Returns ``(P, shift)`` with
    ``f = P * prod(target_i ** shift_i)`` and ``P`` free of monomial content.
    """
    n = target.arity
    names = f.vars.names
    rows = [images[name] for name in names]
    out = {}
    for exps, c in f.items():
        vec = [0] * n
        for e, row in zip(exps, rows):
            if e:
                for j in range(n):
                    vec[j] += e * row[j]
        key = tuple(vec)
        out[key] = out.get(key, 0) + c
    out = {k: v for k, v in out.items() if v}
    if not out:
        return MultiPoly.zero(target), (0,) * n
    low = tuple(min(k[j] for k in out) for j in range(n))
    poly = MultiPoly.from_terms(target, {tuple(a - b for a, b in zip(k, low)): v for k, v in out.items()})
    return poly, low


def somos_to_qrt(y_seq: TermSequence) -> TermSequence:
    """x_n = y_{n+3} y_{n+1} / y_{n+2}^2 rewritten in t, u via c = b^2 u/a, d = b^3 t u^2/a^2.

    ``y_seq`` must use the Somos-4 alphabet a, b, c, d with y_1 = a.
    """
    src = y_seq.vars
    if set(src.names) != {"a", "b", "c", "d"} or y_seq.first != 1:
        raise UsageError("expected a Somos-4 sequence in a, b, c, d starting at index 1")
    if len(y_seq) < 3:
        raise UsageError("need at least three Somos terms")
    big = VarTable(("a", "b", "t", "u"))
    images = {"a": (1, 0, 0, 0), "b": (0, 1, 0, 0), "c": (-1, 2, 0, 1), "d": (-2, 3, 1, 2)}
    spec = qrt2()
    target = spec.vartable()
    basis = FactorBasis(target)
    cache: dict[int, tuple] = {}

    def leaf_image(i: int):
        r = cache.get(i)
        if r is None:
            poly, shift = substitute_monomials(y_seq.basis.poly(i), images, big)
            if poly.degrees()[0] or poly.degrees()[1]:
                raise UsageError("substituted factor still depends on a or b")
            small = MultiPoly.from_terms(target, {(e[2], e[3]): c for e, c in poly.items()})
            r = cache[i] = (Factored.from_poly(basis, small), shift)
        return r

    xs = []
    for n in range(0, y_seq.last - 2):
        x = y_seq[n + 3] * y_seq[n + 1] / y_seq[n + 2] ** 2
        value = Factored.constant(basis, x.const)
        shift = [0, 0, 0, 0]
        for name, m in zip(src.names, x.mono):
            if m:
                row = images[name]
                for j in range(4):
                    shift[j] += m * row[j]
        for i, e in x.exps.items():
            img, s = leaf_image(i)
            value = value * img ** e
            for j in range(4):
                shift[j] += e * s[j]
        if shift[0] or shift[1]:
            raise UsageError(f"x_{n} still depends on a or b")
        mono = [0, 0]
        mono[target.position("t")] = shift[2]
        mono[target.position("u")] = shift[3]
        value = value * Factored(basis, 1, tuple(mono), {})
        xs.append(value)
    return TermSequence(spec, tuple(xs), basis)
