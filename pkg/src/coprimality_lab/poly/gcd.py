"""Greatest common divisors of sparse integer polynomials.

The dispatcher peels off monomial and integer content, then uses modular
univariate images to bound the degree of the gcd in every variable.  Most
calls end right there: all-zero bounds prove the cofactors co-prime, and
bounds matching one operand's degrees lead to a single exact division.  The
remaining cases go to a heuristic integer gcd (small dense inputs), then to
sparse modular interpolation, with a primitive PRS as the last resort.
Every non-trivial answer is verified by exact division.
"""

from __future__ import annotations

import math
import random

import numpy as np

from ..errors import NonDivisible, UsageError
from .images import batch_images, gcd_degree_bound, image_divides
from .modp import gcd_lists, large_prime, monic
from .multipoly import MultiPoly, exact_div, mul

# packed size (bits) below which the heuristic integer gcd is tried first
HEURISTIC_MAX_BITS = 400_000
# upper limit on primes in one sparse-interpolation attempt
MAX_PRIMES = 400
# batch size (points * terms) for vectorized images
BATCH_CELLS = 1 << 22


class _Unlucky(Exception):
    pass


class _LowerDegree(Exception):
    def __init__(self, d):
        self.d = d


def gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Normalized gcd (positive leading coefficient, integer content included)."""
    if f.vars is not g.vars and f.vars != g.vars:
        raise UsageError("polynomials live over different variable tables")
    if not f and not g:
        raise UsageError("gcd(0, 0) is undefined")
    if not f:
        return g.normalized()
    if not g:
        return f.normalized()
    if f == g or f == -g:
        return f.normalized()
    vt = f.vars
    mf, mg = f.monomial_content(), g.monomial_content()
    mono = tuple(min(a, b) for a, b in zip(mf, mg))
    cf, cg = f.content(), g.content()
    c = math.gcd(cf, cg)
    F = f.unshift_monomial(mf).divide_int(cf).normalized()
    G = g.unshift_monomial(mg).divide_int(cg).normalized()
    h = _gcd_primitive(F, G)
    out = h * c if c != 1 else h
    if any(mono):
        out = out.shift_monomial(mono)
    return out


def gcd_many(polys) -> MultiPoly:
    polys = [p for p in polys if p]
    if not polys:
        raise UsageError("gcd of no nonzero polynomials")
    polys.sort(key=len)
    acc = polys[0].normalized()
    for p in polys[1:]:
        if acc.is_constant() and acc.constant_value() == 1:
            break
        acc = gcd(acc, p)
    return acc


def content_in(f: MultiPoly, var: int) -> MultiPoly:
    """Gcd of the coefficients of ``f`` viewed as a polynomial in ``var``."""
    return gcd_many(list(f.coefficients_in(var).values()))


def try_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """Exact quotient f/g, or None; cheap modular rejection first."""
    for v in g.used_vars()[:1]:
        if f.degrees()[v] < g.degrees()[v]:
            return None
        if not image_divides(g, f, v):
            return None
    try:
        return exact_div(f, g)
    except NonDivisible:
        return None


def _one(vt):
    return MultiPoly.one(vt)


def _gcd_primitive(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """Gcd of primitive, monomial-free polynomials with positive leading coefficient."""
    vt = F.vars
    if F.is_constant() or G.is_constant():
        return _one(vt)
    if F == G:
        return F
    if len(F) == 1 or len(G) == 1:
        return _one(vt)
    fu, gu = set(F.used_vars()), set(G.used_vars())
    shared = sorted(fu & gu)
    if not shared:
        return _one(vt)
    bounds = {v: gcd_degree_bound(F, G, v) for v in shared}
    if not any(bounds.values()):
        return _one(vt)
    fd, gd = F.degrees(), G.degrees()
    if gu <= fu and all(bounds[v] == gd[v] for v in gu):
        if try_divide(F, G) is not None:
            return G
    if fu <= gu and all(bounds[v] == fd[v] for v in fu):
        if try_divide(G, F) is not None:
            return F
    if _heuristic_size(F, G, bounds) <= HEURISTIC_MAX_BITS:
        h = _heuristic_gcd(F, G, bounds)
        if h is not None:
            return h
    h = _sparse_gcd(F, G, bounds)
    if h is not None:
        return h
    return _prs_gcd(F, G)


def _finish(h: MultiPoly, F: MultiPoly, G: MultiPoly, bounds: dict) -> MultiPoly | None:
    """Verify a primitive candidate and add the part it may have missed."""
    if h.is_constant():
        return None
    h = h.divide_int(h.content()).normalized()
    qf = try_divide(F, h)
    if qf is None:
        return None
    qg = try_divide(G, h)
    if qg is None:
        return None
    hd = h.degrees()
    if all(hd[v] >= b for v, b in bounds.items()):
        return h
    rest = gcd(qf, qg)
    return mul(h, rest).normalized()


# heuristic: Kronecker evaluation + integer gcd


def _heuristic_dims(F, G, bounds):
    return [(v, b + 1) for v, b in sorted(bounds.items()) if b]


def _heuristic_size(F, G, bounds) -> int:
    dims = _heuristic_dims(F, G, bounds)
    slots = 1
    for _, d in dims:
        slots *= d
    bits = min(F.max_coeff_bits(), G.max_coeff_bits()) + 40
    return slots * bits


def _heuristic_gcd(F, G, bounds) -> MultiPoly | None:
    import gmpy2

    vt = F.vars
    dims = _heuristic_dims(F, G, bounds)
    # variables without a slot must not occur in the gcd; other operands'
    # extra variables are evaluated at 2 so the map stays a ring homomorphism
    strides = {}
    acc = 1
    for v, d in reversed(dims):
        strides[v] = acc
        acc *= d
    slots = acc
    base_bits = min(F.max_coeff_bits(), G.max_coeff_bits()) + 40
    for k in (base_bits, 2 * base_bits + 17):

        def value(P):
            total = 0
            for key, c in P._t.items():
                exps = vt.unpack(key)
                shift = 0
                extra = 1
                for i, e in enumerate(exps):
                    if not e:
                        continue
                    if i in strides:
                        shift += e * strides[i] * k
                    else:
                        extra *= 3 ** e
                total += (c * extra) << shift
            return gmpy2.mpz(total)

        g = gmpy2.gcd(value(F), value(G))
        if g.bit_length() > slots * k:
            continue
        terms = _balanced_digits(int(g), k, dims, vt)
        if not terms:
            continue
        h = _finish(MultiPoly(vt, terms), F, G, bounds)
        if h is not None:
            return h
    return None


def _balanced_digits(n: int, k: int, dims, vt) -> dict:
    half = 1 << (k - 1)
    mask = (1 << k) - 1
    out = {}
    idx = 0
    extents = [d for _, d in dims]
    while n:
        d = n & mask
        n >>= k
        if d >= half:
            d -= 1 << k
            n += 1
        if d:
            rest = idx
            exps = [0] * vt.arity
            for j in range(len(dims) - 1, -1, -1):
                rest, e = divmod(rest, extents[j])
                exps[dims[j][0]] = e
            if rest:
                return {}
            out[vt.pack(exps)] = d
        idx += 1
    return out


# sparse modular interpolation (Zippel)


def _sparse_gcd(F, G, bounds) -> MultiPoly | None:
    vt = F.vars
    cands = [v for v, b in bounds.items() if b]
    best = None
    for v in cands:
        lf, lg = F.leading_coefficient_in(v), G.leading_coefficient_in(v)
        score = (min(len(lf), len(lg)), len(lf) + len(lg), bounds[v])
        if best is None or score < best[0]:
            best = (score, v, lf, lg)
    _, x, lf, lg = best
    gamma = gcd(lf, lg)
    gdeg = gamma.degrees()
    dx = bounds[x]
    ys = [v for v in range(vt.arity) if v != x and (bounds.get(v, 0) or gdeg[v])]
    dy = {v: bounds.get(v, 0) + gdeg[v] for v in ys}
    for attempt in range(4):
        try:
            H = _zippel(F, G, x, ys, dy, dx, gamma, attempt)
        except _LowerDegree as exc:
            dx = exc.d
            if dx == 0:
                break
            continue
        except _Unlucky:
            continue
        if H is None:
            continue
        h = _primitive_in(H, x)
        res = _finish(h, F, G, bounds)
        if res is not None:
            return res
    return None


def _primitive_in(H: MultiPoly, x: int) -> MultiPoly:
    coeffs = H.coefficients_in(x)
    if len(coeffs) > 1:
        c = gcd_many(list(coeffs.values()))
        if not c.is_constant():
            H = exact_div(H, c)
    return H.divide_int(H.content()).normalized()


class _ImageOracle:
    """Images of gamma * monic gcd(F, G) in x at batches of points mod p."""

    def __init__(self, F, G, gamma, x, dx, p):
        self.F, self.G, self.gamma, self.x, self.dx, self.p = F, G, gamma, x, dx, p
        self.dF = F.degrees()[x]
        self.dG = G.degrees()[x]

    def __call__(self, points: np.ndarray):
        F, G, x, p = self.F, self.G, self.x, self.p
        n = points.shape[0]
        step = max(1, BATCH_CELLS // max(len(F), len(G), 1))
        out = []
        for lo in range(0, n, step):
            pts = points[lo:lo + step]
            fi = batch_images(F, x, pts, p, self.dF)
            gi = batch_images(G, x, pts, p, self.dG)
            gv = batch_images(self.gamma, x, pts, p, 0)[:, 0]
            for r in range(pts.shape[0]):
                a = fi[r].tolist()
                b = gi[r].tolist()
                gam = int(gv[r])
                if a[-1] == 0 or b[-1] == 0 or gam == 0:
                    out.append(None)
                    continue
                h = gcd_lists(a, b, p)
                d = len(h) - 1
                if d > self.dx:
                    out.append(None)
                    continue
                if d < self.dx:
                    raise _LowerDegree(d)
                h = monic(h, p)
                out.append([c * gam % p for c in h])
        return out


def _vandermonde_solve(nodes: list, rhs: list, p: int) -> list | None:
    """Solve sum_m c_m * nodes[m]^s = rhs[s-1] for s = 1..T (mod p)."""
    T = len(nodes)
    if T == 1:
        z = nodes[0]
        return [rhs[0] * pow(z, -1, p) % p]
    # master polynomial prod (Z - z_m), highest degree first
    master = [1]
    for z in nodes:
        nxt = master + [0]
        for i in range(1, len(nxt)):
            nxt[i] = (nxt[i] - z * master[i - 1]) % p
        master = nxt
    out = []
    for z in nodes:
        # synthetic division master / (Z - z): coefficients highest first
        q = [0] * T
        acc = 0
        for i in range(T):
            acc = (acc * z + master[i]) % p
            q[i] = acc
        # q[i] is the coefficient of Z^(T-1-i); evaluate q at z for the scale
        denom = 0
        for c in q:
            denom = (denom * z + c) % p
        if denom == 0:
            return None
        num = 0
        for i in range(T):
            num += q[T - 1 - i] * rhs[i]
        cm = num % p * pow(denom * z % p, -1, p) % p
        out.append(cm)
    return out


def _interpolate(xs: list, ys: list, p: int) -> list:
    """Dense interpolation mod p; coefficients lowest degree first."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    poly = [0] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (X - xs[i]) + coef[i]
        nxt = [0] * n
        for d in range(n - 1):
            if poly[d]:
                nxt[d + 1] = (nxt[d + 1] + poly[d]) % p
                nxt[d] = (nxt[d] - poly[d] * xs[i]) % p
        nxt[0] = (nxt[0] + coef[i]) % p
        poly = nxt
    return poly


def _mono_values(monos: list, betas: list, p: int) -> list:
    out = []
    for m in monos:
        v = 1
        for e, b in zip(m, betas):
            if e:
                v = v * pow(b, e, p) % p
        out.append(v)
    return out


def _zippel(F, G, x, ys, dy, dx, gamma, attempt):
    vt = F.vars
    rng = random.Random(0xC0FFEE + 7919 * attempt + 31 * dx)
    prime_index = 8 + attempt * 97
    p = large_prime(prime_index)
    skel, vals = _first_prime(F, G, x, ys, dy, dx, gamma, p, rng)
    if skel is None:
        return None
    modulus = p
    acc = {k: list(v) for k, v in vals.items()}
    prev = None
    for j in range(1, MAX_PRIMES):
        p = large_prime(prime_index + j)
        new = _skeleton_prime(F, G, x, ys, dx, gamma, p, rng, skel)
        if new is None:
            return None
        inv = pow(modulus % p, -1, p)
        for k in acc:
            row, nrow = acc[k], new[k]
            for i in range(len(row)):
                a = row[i]
                row[i] = a + modulus * ((nrow[i] - a) * inv % p)
        modulus *= p
        half = modulus >> 1
        lifted = {k: [c - modulus if c > half else c for c in row] for k, row in acc.items()}
        if lifted == prev:
            return _assemble(vt, x, ys, skel, lifted)
        prev = lifted
    return None


def _assemble(vt, x, ys, skel, coeffs) -> MultiPoly:
    terms = {}
    for k, monos in skel.items():
        for m, c in zip(monos, coeffs[k]):
            if not c:
                continue
            exps = [0] * vt.arity
            exps[x] = k
            for v, e in zip(ys, m):
                exps[v] = e
            terms[vt.pack(exps)] = c
    return MultiPoly(vt, terms)


def _random_points(rng, n, arity, p, fixed):
    pts = np.empty((n, arity), dtype=np.int64)
    for j in range(arity):
        pts[:, j] = fixed[j]
    return pts


def _first_prime(F, G, x, ys, dy, dx, gamma, p, rng):
    arity = F.vars.arity
    oracle = _ImageOracle(F, G, gamma, x, dx, p)
    anchors = [rng.randrange(2, p - 1) for _ in range(arity)]
    if not ys:
        for _ in range(6):
            img = oracle(np.array([anchors], dtype=np.int64))[0]
            if img is not None:
                return {k: [()] for k in range(dx + 1)}, {k: [img[k]] for k in range(dx + 1)}
            anchors = [rng.randrange(2, p - 1) for _ in range(arity)]
        raise _Unlucky()
    # skeleton over the variables interpolated so far
    skel = None
    vals = None
    for i, y in enumerate(ys):
        D = dy[y]
        done = ys[:i]
        samples = []
        used = set()
        while len(samples) < D + 1:
            v = rng.randrange(2, p - 1)
            if v in used:
                continue
            used.add(v)
            if skel is None:
                pts = np.array([anchors], dtype=np.int64)
                pts[0, y] = v
                img = oracle(pts)[0]
                if img is None:
                    continue
                samples.append((v, {k: [img[k]] for k in range(dx + 1)}))
            else:
                sol = _solve_level(oracle, skel, done, anchors, y, v, p, rng, arity)
                if sol is None:
                    continue
                samples.append((v, sol))
        base = skel if skel is not None else {k: [()] for k in range(dx + 1)}
        xs = [s[0] for s in samples]
        new_skel = {}
        new_vals = {}
        for k, monos in base.items():
            ms = []
            cs = []
            for idx, m in enumerate(monos):
                poly = _interpolate(xs, [s[1][k][idx] for s in samples], p)
                for e, c in enumerate(poly):
                    if c:
                        ms.append(m + (e,))
                        cs.append(c)
            new_skel[k] = ms
            new_vals[k] = cs
        skel, vals = new_skel, new_vals
    return skel, vals


def _solve_level(oracle, skel, done, anchors, y, v, p, rng, arity):
    """Coefficients of the current skeleton with y = v and later variables anchored."""
    T = max(len(m) for m in skel.values())
    if T == 0:
        return {k: [] for k in skel}
    for _ in range(4):
        betas = [rng.randrange(2, p - 1) for _ in done]
        nodes = {k: _mono_values(m, betas, p) for k, m in skel.items()}
        if any(len(set(n)) != len(n) or 0 in n for n in nodes.values()):
            continue
        pts = np.empty((T, arity), dtype=np.int64)
        pts[:] = anchors
        pts[:, y] = v
        pw = list(betas)
        for s in range(T):
            for col, var in enumerate(done):
                pts[s, var] = pw[col]
            pw = [a * b % p for a, b in zip(pw, betas)]
        imgs = oracle(pts)
        if any(im is None for im in imgs):
            continue
        out = {}
        for k, monos in skel.items():
            if not monos:
                out[k] = []
                continue
            rhs = [imgs[s][k] for s in range(len(monos))]
            sol = _vandermonde_solve(nodes[k], rhs, p)
            if sol is None:
                break
            out[k] = sol
        else:
            return out
    return None


def _skeleton_prime(F, G, x, ys, dx, gamma, p, rng, skel):
    """Coefficients modulo a fresh prime with the monomial skeleton fixed."""
    arity = F.vars.arity
    oracle = _ImageOracle(F, G, gamma, x, dx, p)
    T = max(len(m) for m in skel.values())
    for _ in range(4):
        anchors = [rng.randrange(2, p - 1) for _ in range(arity)]
        betas = [rng.randrange(2, p - 1) for _ in ys]
        nodes = {k: _mono_values(m, betas, p) for k, m in skel.items()}
        if any(len(set(n)) != len(n) or 0 in n for n in nodes.values()):
            continue
        pts = np.empty((T + 1, arity), dtype=np.int64)
        pts[:] = anchors
        pw = list(betas)
        for s in range(T + 1):
            for col, var in enumerate(ys):
                pts[s, var] = pw[col]
            pw = [a * b % p for a, b in zip(pw, betas)]
        try:
            imgs = oracle(pts)
        except _LowerDegree:
            return None
        if any(im is None for im in imgs):
            continue
        out = {}
        for k, monos in skel.items():
            n = len(monos)
            if not n:
                if any(imgs[s][k] for s in range(T + 1)):
                    return None
                out[k] = []
                continue
            sol = _vandermonde_solve(nodes[k], [imgs[s][k] for s in range(n)], p)
            if sol is None:
                return None
            # one spare equation guards against a wrong skeleton
            check = 0
            for c, z in zip(sol, nodes[k]):
                check += c * pow(z, n + 1, p)
            if check % p != imgs[n][k]:
                return None
            out[k] = sol
        return out
    return None


# primitive PRS, the always-correct fallback


def _prs_gcd(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    vt = F.vars
    if F.is_constant() or G.is_constant():
        return MultiPoly.constant(vt, math.gcd(F.content() if F else 0, G.content() if G else 0))
    shared = sorted(set(F.used_vars()) & set(G.used_vars()))
    if not shared:
        return MultiPoly.constant(vt, math.gcd(F.content(), G.content()))
    fd, gd = F.degrees(), G.degrees()
    x = min(shared, key=lambda v: (min(fd[v], gd[v]), v))
    cF, cG = content_in(F, x), content_in(G, x)
    c = gcd(cF, cG)
    A, B = exact_div(F, cF), exact_div(G, cG)
    if A.degrees()[x] < B.degrees()[x]:
        A, B = B, A
    while B:
        if B.degrees()[x] == 0:
            return c.normalized()
        R = _prem(A, B, x)
        A, B = B, R
        if B:
            B = exact_div(B, content_in(B, x))
    h = exact_div(A, content_in(A, x))
    return mul(c, h).normalized()


def _prem(A: MultiPoly, B: MultiPoly, x: int) -> MultiPoly:
    vt = A.vars
    dB = B.degrees()[x]
    lcB = B.leading_coefficient_in(x)
    e = A.degrees()[x] - dB + 1
    R = A
    while R and R.degrees()[x] >= dB:
        dR = R.degrees()[x]
        shift = [0] * vt.arity
        shift[x] = dR - dB
        s = R.leading_coefficient_in(x).shift_monomial(shift)
        R = mul(lcB, R) - mul(s, B)
        e -= 1
    if e > 0:
        R = mul(lcB ** e, R)
    return R
