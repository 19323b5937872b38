"""Vectorized sparse products for polynomials with word-sized coefficients.

Exponent keys are re-encoded in the mixed radix of the product's degree box,
so a product of monomials is an int64 addition; partial products are merged
by sorting.  Used when Kronecker packing would be too large (many variables)
and the coefficients provably stay below 2^63.
"""

from __future__ import annotations

import numpy as np

from .vartable import FIELD_BITS

# pairs processed per vectorized block, and pending pairs before a merge
BLOCK_PAIRS = 1 << 22
MERGE_PAIRS = 1 << 24
INT64_LIMIT = 1 << 62


def key_fields(keys, nfields: int) -> np.ndarray:
    """Keys as an (n, nfields) uint16 array; column j is field j from the low end."""
    width = nfields * FIELD_BITS // 8
    raw = b"".join(k.to_bytes(width, "little") for k in keys)
    return np.frombuffer(raw, dtype="<u2").reshape(-1, nfields)


def _merge(keys: np.ndarray, coefs: np.ndarray):
    order = np.argsort(keys)
    keys = keys[order]
    coefs = coefs[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    return keys[starts], np.add.reduceat(coefs, starts)


def numpy_mul(f, g) -> dict | None:
    """Product terms of ``f*g``, or None when the int64 route does not apply."""
    vt = f.vars
    a, b = f._t, g._t
    if len(a) < len(b):
        a, b = b, a
    bound = max(abs(v) for v in a.values()) * max(abs(v) for v in b.values()) * len(b)
    if bound >= INT64_LIMIT:
        return None
    df, dg = f.degrees(), g.degrees()
    # field j of a key holds variable arity-1-j; the last field is the total degree
    nfields = vt.arity + 1
    used = [(i, x + y + 1) for i, (x, y) in enumerate(zip(df, dg)) if x + y]
    strides = []
    acc = 1
    for _, ext in reversed(used):
        strides.append(acc)
        acc *= ext
    strides.reverse()
    if acc >= INT64_LIMIT:
        return None
    cols = [vt.arity - 1 - i for i, _ in used]
    st = np.array(strides, dtype=np.int64)
    ia = key_fields(a.keys(), nfields)[:, cols].astype(np.int64) @ st
    ib = key_fields(b.keys(), nfields)[:, cols].astype(np.int64) @ st
    ca = np.fromiter(a.values(), dtype=np.int64, count=len(a))
    cb = np.fromiter(b.values(), dtype=np.int64, count=len(b))

    rows = max(1, BLOCK_PAIRS // len(b))
    done_k = np.empty(0, dtype=np.int64)
    done_c = np.empty(0, dtype=np.int64)
    pend_k, pend_c, pending = [], [], 0
    for s in range(0, len(a), rows):
        pend_k.append((ia[s:s + rows, None] + ib[None, :]).ravel())
        pend_c.append((ca[s:s + rows, None] * cb[None, :]).ravel())
        pending += pend_k[-1].size
        if pending >= MERGE_PAIRS:
            done_k, done_c = _merge(np.concatenate([done_k] + pend_k), np.concatenate([done_c] + pend_c))
            pend_k, pend_c, pending = [], [], 0
    if pend_k:
        done_k, done_c = _merge(np.concatenate([done_k] + pend_k), np.concatenate([done_c] + pend_c))
    live = done_c != 0
    keys, coefs = done_k[live], done_c[live]

    out_fields = np.zeros((keys.size, nfields), dtype="<u2")
    rest = keys
    total = np.zeros(keys.size, dtype=np.int64)
    for (i, ext), col in zip(reversed(used), reversed(cols)):
        rest, e = np.divmod(rest, ext)
        out_fields[:, col] = e
        total += e
    out_fields[:, vt.arity] = total
    raw = out_fields.tobytes()
    width = nfields * FIELD_BITS // 8
    frm = int.from_bytes
    return {frm(raw[j:j + width], "little"): c for j, c in zip(range(0, len(raw), width), coefs.tolist())}
