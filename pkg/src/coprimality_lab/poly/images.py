"""Vectorized evaluation of integer polynomials modulo 31-bit primes.

Every polynomial caches its exponent matrix and, per prime, its coefficient
residues, so repeated images (degree bounds, sparse interpolation) cost one
numpy gather per variable.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .modp import gcd_lists, large_prime, trim
from .vartable import FIELD_MASK


def exponent_matrix(f) -> np.ndarray:
    c = f._c()
    m = c.get("expmat")
    if m is None:
        shifts = f.vars._shifts
        keys = list(f._t)
        c["expkeys"] = keys
        if keys:
            m = np.array([[(k >> s) & FIELD_MASK for s in shifts] for k in keys], dtype=np.int64)
        else:
            m = np.zeros((0, len(shifts)), dtype=np.int64)
        c["expmat"] = m
    return m


def coeffs_mod(f, p: int) -> np.ndarray:
    c = f._c()
    key = ("cmod", p)
    r = c.get(key)
    if r is None:
        exponent_matrix(f)
        keys = c["expkeys"]
        t = f._t
        r = c[key] = np.array([t[k] % p for k in keys], dtype=np.int64)
    return r


@lru_cache(maxsize=4096)
def anchor_point(p: int, attempt: int, arity: int) -> tuple[int, ...]:
    """A fixed pseudo-random evaluation point; depends only on (p, attempt)."""
    rng = random.Random((p << 20) ^ attempt ^ 0x5EED)
    return tuple(rng.randrange(2, p - 1) for _ in range(arity))


def _power_column(v: int, d: int, p: int) -> np.ndarray:
    out = np.empty(d + 1, dtype=np.int64)
    acc = 1
    for e in range(d + 1):
        out[e] = acc
        acc = acc * v % p
    return out


def univariate_image(f, var: int, point, p: int) -> list[int]:
    """f with every variable but ``var`` set to ``point`` (mod p); lowest degree first."""
    E = exponent_matrix(f)
    vals = coeffs_mod(f, p).copy()
    degs = f.degrees()
    for j, d in enumerate(degs):
        if j == var or not d:
            continue
        col = _power_column(point[j], d, p)
        vals = vals * col[E[:, j]] % p
    dv = degs[var]
    acc = np.zeros(dv + 1, dtype=np.int64)
    np.add.at(acc, E[:, var], vals)
    return trim([int(x) for x in acc % p])


def cached_image(f, var: int, p: int, attempt: int) -> list[int]:
    c = f._c()
    key = ("img", var, p, attempt)
    r = c.get(key)
    if r is None:
        point = anchor_point(p, attempt, f.vars.arity)
        r = c[key] = univariate_image(f, var, point, p)
    return r


def batch_images(f, var: int, points: np.ndarray, p: int, dv: int) -> np.ndarray:
    """Images at many points at once.

    ``points`` has shape (npoints, arity); the column of ``var`` is ignored.
    Returns an array of shape (npoints, dv+1) of coefficients mod p.
    """
    E = exponent_matrix(f)
    npts = points.shape[0]
    vals = np.broadcast_to(coeffs_mod(f, p), (npts, E.shape[0])).copy()
    degs = f.degrees()
    for j, d in enumerate(degs):
        if j == var or not d:
            continue
        tab = np.empty((npts, d + 1), dtype=np.int64)
        tab[:, 0] = 1
        base = points[:, j] % p
        for e in range(1, d + 1):
            tab[:, e] = tab[:, e - 1] * base % p
        vals = vals * tab[:, E[:, j]] % p
    out = np.zeros((npts, dv + 1), dtype=np.int64)
    if E.shape[0]:
        order, uniq, starts = _grouping(f, var)
        sums = np.add.reduceat(vals[:, order], starts, axis=1) % p
        keep = uniq <= dv
        out[:, uniq[keep]] = sums[:, keep]
    return out


def _grouping(f, var: int):
    c = f._c()
    key = ("group", var)
    r = c.get(key)
    if r is None:
        xs = exponent_matrix(f)[:, var]
        order = np.argsort(xs, kind="stable")
        uniq, starts = np.unique(xs[order], return_index=True)
        r = c[key] = (order, uniq, starts)
    return r


def evaluate_mod(f, point, p: int) -> int:
    E = exponent_matrix(f)
    vals = coeffs_mod(f, p).copy()
    for j, d in enumerate(f.degrees()):
        if not d:
            continue
        col = _power_column(point[j] % p, d, p)
        vals = vals * col[E[:, j]] % p
    return int(vals.sum() % p)


def gcd_degree_bound(f, g, var: int, max_attempts: int = 12) -> int:
    """Upper bound for deg_var gcd(f, g) from univariate images.

    Rigorous whenever at least one operand keeps its degree in ``var`` at
    the evaluation point, which is checked.
    """
    df, dg = f.degrees()[var], g.degrees()[var]
    if not df or not dg:
        return 0
    for attempt in range(max_attempts):
        p = large_prime(attempt % 8)
        a = cached_image(f, var, p, attempt)
        b = cached_image(g, var, p, attempt)
        if len(a) - 1 == df or len(b) - 1 == dg:
            return len(gcd_lists(a, b, p)) - 1
    return min(df, dg)


def image_divides(h, f, var: int, attempt: int = 0) -> bool:
    """False only if h provably does not divide f (mod-p univariate image test)."""
    from .modp import rem

    p = large_prime(attempt % 8)
    a = cached_image(f, var, p, attempt)
    b = cached_image(h, var, p, attempt)
    if not b:
        return True
    return not rem(a, b, p)
