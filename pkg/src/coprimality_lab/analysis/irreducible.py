"""One-sided irreducibility certificates by content check and specialization.

If f is primitive in X over the other variables and a specialization of the
other variables keeps deg_X, any factorization of f into two non-units
survives as a factorization of the univariate image.  The image is shown
irreducible over Q when the degree patterns of its factorizations modulo
several primes admit no common proper sub-degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import DegreeDrop, UsageError
from ..poly import MultiPoly
from ..poly.gcd import content_in, gcd, try_divide
from ..poly.modp import PrimePoly, prime_ddf, prime_pool
from ..ring import UnitSpec, split_units

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"
UNKNOWN = "unknown"

MAX_RETRIES = 8
MIN_PRIMES = 3
POINT_RANGE = 1000
PRIME_COUNT = 60


@dataclass(frozen=True)
class Certificate:
    main_var: str
    point: tuple
    primes: tuple
    patterns: tuple
    degree: int
    seed: int
    attempt: int

    def to_json(self) -> dict:
        return {
            "main_var": self.main_var,
            "point": {k: str(v) for k, v in self.point},
            "primes": list(self.primes),
            "patterns": [{str(d): c for d, c in p} for p in self.patterns],
            "degree": self.degree,
            "seed": self.seed,
            "attempt": self.attempt,
        }


@dataclass(frozen=True)
class IrreducibilityVerdict:
    kind: str
    certificate: Certificate | None = None
    witness: MultiPoly | None = None
    retries: int = 0

    @property
    def irreducible(self) -> bool:
        return self.kind == IRREDUCIBLE


def subset_degrees(pattern: dict) -> set:
    """Degrees of all products of distinct irreducible factors with the given pattern."""
    sums = {0}
    for d, count in pattern.items():
        for _ in range(count):
            sums |= {s + d for s in sums}
    return sums


def _derivative(f: MultiPoly, i: int) -> MultiPoly:
    terms = {}
    for exps, c in f.items():
        e = exps[i]
        if e:
            lowered = list(exps)
            lowered[i] = e - 1
            terms[tuple(lowered)] = c * e
    return MultiPoly.from_terms(f.vars, terms)


def _nonunit(h: MultiPoly, u: UnitSpec) -> MultiPoly | None:
    if h.is_constant():
        return None
    rest = split_units(h, u).rest
    return None if rest.is_constant() else rest


def _prepare(f: MultiPoly, u: UnitSpec) -> MultiPoly:
    if not isinstance(f, MultiPoly) or not f:
        raise UsageError("irreducibility needs a nonzero polynomial")
    core = split_units(f, u).rest
    if core.is_constant():
        raise UsageError("the polynomial is a unit")
    return core


def _main_vars(core: MultiPoly, u: UnitSpec) -> list[str]:
    names = core.vars.names
    degs = core.degrees()
    usable = [i for i in core.used_vars() if names[i] not in u.coefficient_vars]
    return [names[i] for i in sorted(usable, key=lambda i: (degs[i], names[i]))]


def _primitive_in(core: MultiPoly, var: str, u: UnitSpec):
    """(core divided by its content in ``var``, non-unit content or None)."""
    i = core.vars.position(var)
    cont = content_in(core, i).normalized()
    bad = _nonunit(cont, u)
    if bad is not None:
        return None, bad
    if not cont.is_constant():
        core = core.exact_div(cont)
    return core, None


def _image_coefficients(core: MultiPoly, var: str, point: dict) -> list[int]:
    img = core.specialize(var, point)
    i = core.vars.position(var)
    out = [0] * (core.degree(var) + 1)
    for exps, c in img.items():
        out[exps[i]] = c
    return out


def _pattern(coeffs: list[int], p: int) -> dict | None:
    deg = len(coeffs) - 1
    if coeffs[deg] % p == 0:
        return None
    fp = PrimePoly(p, tuple(c % p for c in coeffs))
    if not fp.is_squarefree():
        return None
    return prime_ddf(fp)


def _prove_image(coeffs: list[int]):
    """(primes, patterns) once the surviving sub-degrees are only {0, deg}, else None."""
    deg = len(coeffs) - 1
    alive = set(range(deg + 1))
    primes, patterns = [], []
    for p in prime_pool(PRIME_COUNT):
        pat = _pattern(coeffs, p)
        if pat is None:
            continue
        alive &= subset_degrees(pat)
        primes.append(p)
        patterns.append(tuple(sorted(pat.items())))
        if len(primes) >= MIN_PRIMES and alive == {0, deg}:
            return tuple(primes), tuple(patterns)
    return None


def irreducible_certify(f: MultiPoly, u: UnitSpec, seed: int = 0, candidates=(),
                        max_retries: int = MAX_RETRIES) -> IrreducibilityVerdict:
    """Irreducible with a replayable certificate, a non-unit exact divisor, or Unknown."""
    core = _prepare(f, u)
    vt = core.vars
    for c in candidates:
        c = _nonunit(c.lift(vt) if c.vars != vt else c, u)
        if c is None or c == core or c.degree() >= core.degree():
            continue
        if try_divide(core, c) is not None:
            return IrreducibilityVerdict(REDUCIBLE, witness=c)
    mc = core.monomial_content()
    if any(mc) and not core.is_monomial():
        name = vt.names[next(i for i, e in enumerate(mc) if e)]
        return IrreducibilityVerdict(REDUCIBLE, witness=MultiPoly.gen(vt, name))
    mains = _main_vars(core, u)
    if not mains:
        raise UsageError("no variable outside the coefficient variables")
    rng = random.Random(seed)
    for attempt in range(max_retries):
        var = mains[attempt % len(mains)]
        prim, bad = _primitive_in(core, var, u)
        if bad is not None:
            return IrreducibilityVerdict(REDUCIBLE, witness=bad)
        i = vt.position(var)
        rep = gcd(prim, _derivative(prim, i))
        bad = _nonunit(rep, u)
        if bad is not None:
            return IrreducibilityVerdict(REDUCIBLE, witness=bad)
        others = [vt.names[j] for j in prim.used_vars() if vt.names[j] != var]
        point = {n: rng.choice([-1, 1]) * rng.randint(1, POINT_RANGE) for n in others}
        try:
            coeffs = _image_coefficients(prim, var, point)
        except DegreeDrop:
            continue
        proof = _prove_image(coeffs)
        if proof is None:
            continue
        cert = Certificate(var, tuple(sorted(point.items())), proof[0], proof[1], len(coeffs) - 1, seed, attempt)
        return IrreducibilityVerdict(IRREDUCIBLE, certificate=cert)
    return IrreducibilityVerdict(UNKNOWN, retries=max_retries)


def replay_certificate(f: MultiPoly, u: UnitSpec, cert: Certificate) -> bool:
    """Re-run the content check, the specialization and the prime patterns."""
    core = _prepare(f, u)
    prim, bad = _primitive_in(core, cert.main_var, u)
    if bad is not None:
        return False
    try:
        coeffs = _image_coefficients(prim, cert.main_var, dict(cert.point))
    except DegreeDrop:
        return False
    deg = len(coeffs) - 1
    if deg != cert.degree or deg != prim.degree(cert.main_var) or len(cert.primes) < MIN_PRIMES:
        return False
    alive = set(range(deg + 1))
    for p, recorded in zip(cert.primes, cert.patterns):
        pat = _pattern(coeffs, p)
        if pat is None or tuple(sorted(pat.items())) != recorded:
            return False
        alive &= subset_degrees(pat)
    return alive == {0, deg}
