"""Vectorized Euclid for long univariate polynomials modulo a 31-bit prime."""

from __future__ import annotations

import numpy as np


def _strip(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[nz[0]:] if nz.size else a[:0]


def gcd_np(a: list, b: list, p: int) -> list:
    """Monic gcd of two coefficient lists (lowest degree first)."""
    A = _strip(np.array(a[::-1], dtype=np.int64) % p)
    B = _strip(np.array(b[::-1], dtype=np.int64) % p)
    if A.size < B.size:
        A, B = B, A
    while B.size:
        inv = pow(int(B[0]), -1, p)
        B = B * inv % p
        A = A.copy()
        m = B.size
        for i in range(A.size - m + 1):
            c = int(A[i])
            if c:
                A[i:i + m] = (A[i:i + m] - c * B) % p
        A, B = B, _strip(A[A.size - m + 1:])
    if not A.size:
        return []
    inv = pow(int(A[0]), -1, p)
    return [int(x) for x in (A * inv % p)[::-1]]
