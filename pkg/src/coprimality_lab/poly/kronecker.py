"""Dense products and quotients through Kronecker substitution.

A polynomial in few variables with moderate degrees is packed into a single
big integer (one fixed-width signed digit per monomial slot); the product of
the packed integers is computed by GMP and unpacked again.  This is only used
when the slot count stays comparable to the number of coefficient
multiplications a schoolbook product would do.
"""

from __future__ import annotations

import gmpy2
import numpy as np

from .vartable import FIELD_MASK

# hard cap on the packed size of one operand, in bytes
MAX_PACKED_BYTES = 1 << 27
# packed bytes allowed per coefficient multiplication the sparse routine
# would do (measured: GMP ~70ns/byte, schoolbook ~500ns, heap division ~1.3us)
BYTES_PER_PRODUCT = 6
BYTES_PER_DIV_PRODUCT = 16


def _layout(vt, dims: list[tuple[int, int]]):
    """Slot strides for ``dims`` = [(var index, slot extent)], last var fastest."""
    strides = [0] * len(dims)
    acc = 1
    for j in range(len(dims) - 1, -1, -1):
        strides[j] = acc
        acc *= dims[j][1]
    shifts = [vt._shifts[i] for i, _ in dims]
    return strides, shifts, acc


def _pack(terms: dict, shifts, strides, slots: int, nbytes: int):
    pos = bytearray(slots * nbytes)
    neg = None
    for k, c in terms.items():
        idx = 0
        for s, st in zip(shifts, strides):
            idx += ((k >> s) & FIELD_MASK) * st
        off = idx * nbytes
        if c > 0:
            pos[off:off + nbytes] = c.to_bytes(nbytes, "little")
        else:
            if neg is None:
                neg = bytearray(slots * nbytes)
            neg[off:off + nbytes] = (-c).to_bytes(nbytes, "little")
    value = gmpy2.mpz(int.from_bytes(pos, "little"))
    if neg is not None:
        value -= gmpy2.mpz(int.from_bytes(neg, "little"))
    return value


def _unpack(value, vt, dims, strides, slots: int, nbytes: int) -> dict:
    """Decode balanced base-2^(8*nbytes) digits into a term dict."""
    half = 1 << (8 * nbytes - 1)
    pattern = (b"\x00" * (nbytes - 1) + b"\x80") * slots
    offset = gmpy2.mpz(int.from_bytes(pattern, "little"))
    shifted = value + offset
    if shifted < 0 or shifted.bit_length() > 8 * nbytes * slots:
        raise OverflowError("packed value does not fit the digit layout")
    raw = int(shifted).to_bytes(slots * nbytes, "little")
    arr = np.frombuffer(raw, dtype=np.uint8).reshape(slots, nbytes)
    zero = np.frombuffer(pattern[:nbytes], dtype=np.uint8)
    live = np.nonzero(np.any(arr != zero, axis=1))[0]
    total_shift = vt._total_shift
    shifts = [vt._shifts[i] for i, _ in dims]
    extents = [d for _, d in dims]
    out = {}
    frm = int.from_bytes
    for idx in live.tolist():
        off = idx * nbytes
        c = frm(raw[off:off + nbytes], "little") - half
        key = 0
        total = 0
        rest = idx
        for j in range(len(dims) - 1, -1, -1):
            rest, e = divmod(rest, extents[j])
            if e:
                key |= e << shifts[j]
                total += e
        out[key | (total << total_shift)] = c
    return out


def _max_abs(terms: dict) -> int:
    return max(abs(v) for v in terms.values())


def kronecker_mul(f, g) -> dict | None:
    """Product terms of ``f*g`` via packed integers, or None when not worthwhile."""
    if not f._t or not g._t:
        return {}
    vt = f.vars
    df, dg = f.degrees(), g.degrees()
    dims = [(i, a + b + 1) for i, (a, b) in enumerate(zip(df, dg)) if a + b]
    if not dims:
        return None
    strides, shifts, slots = _layout(vt, dims)
    bound = _max_abs(f._t) * _max_abs(g._t) * min(len(f), len(g))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    size = slots * nbytes
    if size > MAX_PACKED_BYTES or size > BYTES_PER_PRODUCT * len(f) * len(g):
        return None
    a = _pack(f._t, shifts, strides, slots, nbytes)
    b = a if f._t is g._t else _pack(g._t, shifts, strides, slots, nbytes)
    return _unpack(a * b, vt, dims, strides, slots, nbytes)


def kronecker_div(f, g):
    """Exact quotient terms of ``f/g`` via packed integers.

    Returns the quotient dict, ``False`` when ``g`` provably does not divide
    ``f``, or ``None`` when the packed route is not applicable.
    """
    vt = f.vars
    df, dg = f.degrees(), g.degrees()
    dims = [(i, a + 1) for i, a in enumerate(df) if a]
    if not dims:
        return None
    strides, shifts, slots = _layout(vt, dims)
    q_slots = 1
    for a, b in zip(df, dg):
        q_slots *= a - b + 1
    # the heap division does about |q|*|g| products
    work = len(g) * min(len(f), q_slots)
    bits = max(f.max_coeff_bits(), g.max_coeff_bits()) + len(f).bit_length() + 34
    for _ in range(3):
        nbytes = (bits + 7) // 8
        size = slots * nbytes
        if size > MAX_PACKED_BYTES or size > BYTES_PER_DIV_PRODUCT * work:
            return None
        a = _pack(f._t, shifts, strides, slots, nbytes)
        b = _pack(g._t, shifts, strides, slots, nbytes)
        q, r = gmpy2.t_divmod(a, b)
        if r:
            # g(B) divides f(B) whenever g divides f
            return False
        try:
            qt = _unpack(q, vt, dims, strides, slots, nbytes)
        except OverflowError:
            bits *= 2
            continue
        if qt and _verify(qt, g, f):
            return qt
        bits *= 2
    return None


def _verify(qt: dict, g, f) -> bool:
    from .multipoly import MultiPoly, mul

    q = MultiPoly(f.vars, qt)
    if any(a > b for a, b in zip(q.degrees(), f.degrees())):
        return False
    return mul(q, g)._t == f._t
