"""Dense univariate polynomials modulo a prime.

Coefficient lists are stored lowest degree first.  The module also fixes the
two deterministic prime sources used elsewhere: a pool of small primes for
distinct-degree factorization and a descending run of 31-bit primes for
modular GCD images.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import RetryPrime, UsageError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def prime_pool(count: int = 20, start: int = 1000) -> tuple[int, ...]:
    """The first ``count`` primes at or above ``start``."""
    out = []
    n = start
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)


@lru_cache(maxsize=None)
def large_primes(count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2**31, descending."""
    out = []
    n = (1 << 31) - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def large_prime(i: int) -> int:
    return large_primes(max(64, 1 << (i + 1).bit_length()))[i]


# raw list arithmetic (lowest degree first, no trailing zeros)


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def monic(a: list, p: int) -> list:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def rem(a: list, b: list, p: int) -> list:
    """Remainder of ``a`` modulo ``b`` (``b`` nonzero)."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return a
    inv = pow(b[-1], -1, p)
    bb = b[:-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c * inv % p
            base = i - db
            for j, bj in enumerate(bb):
                if bj:
                    a[base + j] = (a[base + j] - c * bj) % p
        a[i] = 0
    return trim(a[:db])


def divmod_lists(a: list, b: list, p: int) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    bb = b[:-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = c * inv % p
            q[i - db] = c
            base = i - db
            for j, bj in enumerate(bb):
                if bj:
                    a[base + j] = (a[base + j] - c * bj) % p
        a[i] = 0
    return trim(q), trim(a[:db])


def mul_lists(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def sub_lists(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def gcd_lists(a: list, b: list, p: int) -> list:
    """Monic gcd (empty list when both are zero)."""
    a, b = trim(list(a)), trim(list(b))
    if len(a) < len(b):
        a, b = b, a
    if len(b) > 64:
        from .modp_np import gcd_np

        return gcd_np(a, b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod_lists(base: list, e: int, mod: list, p: int) -> list:
    result = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            result = rem(mul_lists(result, base, p), mod, p)
        e >>= 1
        if e:
            base = rem(mul_lists(base, base, p), mod, p)
    return result


def derivative_lists(a: list, p: int) -> list:
    return trim([i * a[i] % p for i in range(1, len(a))])


@dataclass(frozen=True)
class PrimePoly:
    """A univariate polynomial over GF(p), coefficients lowest degree first."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        if self.p < 2:
            raise UsageError("modulus must be a prime")
        c = [x % self.p for x in self.coeffs]
        trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_ints(cls, p: int, coeffs, degree: int | None = None) -> "PrimePoly":
        """Reduce integer coefficients; raise RetryPrime if the degree would drop."""
        f = cls(p, tuple(coeffs))
        expected = len(coeffs) - 1 if degree is None else degree
        if f.degree != expected:
            raise RetryPrime(f"{p} divides the leading coefficient")
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def _same(self, other: "PrimePoly"):
        if not isinstance(other, PrimePoly) or other.p != self.p:
            raise UsageError("PrimePoly operands need the same modulus")

    def __add__(self, other):
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PrimePoly(self.p, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        self._same(other)
        return PrimePoly(self.p, tuple(sub_lists(list(self.coeffs), list(other.coeffs), self.p)))

    def __mul__(self, other):
        self._same(other)
        return PrimePoly(self.p, tuple(mul_lists(list(self.coeffs), list(other.coeffs), self.p)))

    def __divmod__(self, other):
        self._same(other)
        if other.is_zero():
            raise UsageError("division by zero polynomial")
        q, r = divmod_lists(list(self.coeffs), list(other.coeffs), self.p)
        return PrimePoly(self.p, tuple(q)), PrimePoly(self.p, tuple(r))

    def monic(self) -> "PrimePoly":
        return PrimePoly(self.p, tuple(monic(list(self.coeffs), self.p)))

    def gcd(self, other: "PrimePoly") -> "PrimePoly":
        self._same(other)
        return PrimePoly(self.p, tuple(gcd_lists(self.coeffs, other.coeffs, self.p)))

    def derivative(self) -> "PrimePoly":
        return PrimePoly(self.p, tuple(derivative_lists(list(self.coeffs), self.p)))

    def is_squarefree(self) -> bool:
        if self.degree < 1:
            return True
        d = self.derivative()
        if d.is_zero():
            return False
        return self.gcd(d).degree == 0


def prime_ddf(f: PrimePoly) -> dict[int, int]:
    """Distinct-degree factorization pattern: {factor degree: number of factors}.

    ``f`` must be squarefree modulo its prime; callers check that first.
    """
    p = f.p
    if f.is_zero():
        raise UsageError("distinct-degree factorization of the zero polynomial")
    if f.coeffs[-1] % p == 0:  # pragma: no cover - excluded by PrimePoly invariant
        raise RetryPrime(f"{p} divides the leading coefficient")
    g = monic(list(f.coeffs), p)
    out: dict[int, int] = {}
    x = [0, 1]
    h = x
    i = 0
    while len(g) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod_lists(h, p, g, p)
        d = gcd_lists(g, sub_lists(h, x, p), p)
        if len(d) > 1:
            out[i] = out.get(i, 0) + (len(d) - 1) // i
            g, _ = divmod_lists(g, d, p)
            h = rem(h, g, p)
    if len(g) > 1:
        out[len(g) - 1] = out.get(len(g) - 1, 0) + 1
    return dict(sorted(out.items()))
