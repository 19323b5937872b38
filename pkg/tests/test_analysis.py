import random

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from coprimality_lab.analysis import (
    CONFINED,
    INCONCLUSIVE,
    IRREDUCIBLE,
    REDUCIBLE,
    UNCONFINED,
    UNKNOWN,
    alternating_orders,
    classify,
    confinement_profile,
    confinement_table,
    coprime,
    coprime_pairs,
    degree_growth,
    discover_factors,
    irreducible_certify,
    laurent_units,
    replay_certificate,
    separated,
    subset_degrees,
    term_degree,
    valuation,
    valuation_table,
)
from coprimality_lab.errors import UsageError
from coprimality_lab.poly import MultiPoly, VarTable
from coprimality_lab.recurrence import evolve, nonqrt3, parse_poly, qrt2, somos4
from coprimality_lab.ring import FactorBasis, Factored, RationalFunction, UnitSpec, reduce

from oracle import sympy_poly, to_sympy
from strategies import SMALL_VT, VT, nonzero_polys

TU = SMALL_VT
R_TU = laurent_units(TU)
R_SOMOS = UnitSpec(monomial_vars=set("abcd"), name="R")


def P(text, vt=TU):
    return parse_poly(text, vt)


@pytest.fixture(scope="module")
def qrt():
    return evolve(qrt2(), 13)


@pytest.fixture(scope="module")
def nonqrt():
    return evolve(nonqrt3(), 9)


@pytest.fixture(scope="module")
def somos():
    return evolve(somos4(), 14)


def sympy_multiplicity(f: MultiPoly, g: MultiPoly) -> int:
    """Order of g in f by repeated exact sympy division."""
    pf, pg = sympy_poly(f), sympy_poly(g)
    k = 0
    while True:
        q, r = sympy.div(pf, pg)
        if not r.is_zero:
            return k
        pf, k = q, k + 1


# valuation


def test_qrt_confinement_orders(qrt):
    F = P("1+t+t^2*u")
    assert [valuation(qrt[n], F) for n in (3, 4, 5)] == [1, -2, 1]
    assert all(valuation(qrt[n], F) == 0 for n in qrt.indices() if n not in (3, 4, 5))


def test_nonqrt_orders(nonqrt):
    assert [valuation(nonqrt[n], P("1+t")) for n in range(2, 6)] == [1, -3, 5, -12]


def test_valuation_of_factor_itself():
    g = P("1+t+t^2*u")
    assert valuation(RationalFunction.from_poly(g), g) == 1
    assert valuation(g, g) == 1


@pytest.mark.parametrize("bad", ["3", "t^2*u", "2+2*t", "t+t^2"])
def test_valuation_rejects_unit_like_factors(bad):
    with pytest.raises(UsageError):
        valuation(P("1+t"), P(bad))


def test_valuation_matches_sympy_on_qrt_terms(qrt):
    F = P("1+t+t^2*u")
    for n in qrt.indices():
        r = qrt.rational(n)
        assert valuation(r, F) == sympy_multiplicity(r.num, F) - sympy_multiplicity(r.den, F)


def test_valuation_is_additive():
    rng = random.Random(5)
    g = P("1+t+t^2*u")
    pieces = [P(s) for s in ("1+t", "u-2", "t*u+3", "1+t+t^2*u", "t^2-u", "2*t+u+1")]
    for _ in range(50):
        def rand_rf():
            num = MultiPoly.one(TU)
            den = MultiPoly.one(TU)
            for _ in range(rng.randint(1, 4)):
                num = num * rng.choice(pieces)
            for _ in range(rng.randint(0, 3)):
                den = den * rng.choice(pieces)
            return reduce(num, den)
        f, h = rand_rf(), rand_rf()
        assert valuation(f * h, g) == valuation(f, g) + valuation(h, g)


@settings(max_examples=40)
@given(nonzero_polys(max_terms=3, max_degree=3), nonzero_polys(max_terms=3, max_degree=3), st.integers(0, 3),
       st.integers(0, 3))
def test_valuation_on_factored_values_matches_expanded(f, h, j, k):
    g = parse_poly("a+b*c+1", VT)
    basis = FactorBasis(VT)
    F = Factored.from_poly(basis, f * g**j) / Factored.from_poly(basis, h * g**k)
    expected = sympy_multiplicity(f * g**j, g) - sympy_multiplicity(h * g**k, g)
    assert valuation(F, g) == expected
    assert valuation(F.to_rational(), g) == expected


def test_valuation_table_keys(qrt):
    table = valuation_table(qrt, P("1+t+t^2*u"))
    assert list(table) == list(qrt.indices())


# co-primeness


def test_somos_neighbours_coprime(somos):
    assert coprime(somos[5], somos[6], R_SOMOS)


def test_qrt_neighbours_share_factor(qrt):
    v = coprime(qrt[4], qrt[5], R_TU)
    assert not v
    assert v.witness == P("1+2*t+t^2+t*u+t^2*u+t^3*u^2")


def test_value_not_coprime_with_itself(qrt):
    v = coprime(qrt.rational(3), qrt.rational(3), R_TU)
    assert not v and v.pair == "num-num"


def test_units_do_not_break_coprimality():
    assert coprime(RationalFunction.from_poly(P("t^3*u")), RationalFunction.from_poly(P("t*u^2")), R_TU)
    assert not coprime(RationalFunction.from_poly(P("t^3*u")), RationalFunction.from_poly(P("t")), UnitSpec())


@settings(max_examples=40)
@given(nonzero_polys(max_terms=3, max_degree=3), nonzero_polys(max_terms=3, max_degree=3),
       nonzero_polys(max_terms=3, max_degree=3), nonzero_polys(max_terms=3, max_degree=3))
def test_coprime_is_symmetric_and_matches_gcds(a, b, c, d):
    u = UnitSpec()
    f, g = reduce(a, b), reduce(c, d)
    assume(f and g)
    v1, v2 = coprime(f, g, u), coprime(g, f, u)
    assert bool(v1) == bool(v2)
    ref = all(
        sympy.gcd(to_sympy(p), to_sympy(q)).is_Number
        for p in (f.num, f.den) for q in (g.num, g.den)
    )
    assert bool(v1) == ref
    # the factored route gives the same verdict
    basis = FactorBasis(VT)
    assert bool(coprime(Factored.from_rational(basis, f), Factored.from_rational(basis, g), u)) == ref


@given(nonzero_polys(max_terms=4, max_degree=4))
def test_coprime_reflexive_false_on_non_units(f):
    u = UnitSpec()
    assume(not f.is_constant())
    assert not coprime(RationalFunction.from_poly(f), RationalFunction.from_poly(f), u)


def test_somos_pairs_all_coprime(somos):
    pairs = coprime_pairs([(n, somos[n]) for n in range(5, 15)], R_SOMOS)
    assert len(pairs) == 45 and all(pairs.values())


def test_nonqrt_pairs_never_coprime(nonqrt):
    pairs = coprime_pairs([(n, nonqrt[n]) for n in range(2, 9)], laurent_units(nonqrt.vars))
    assert len(pairs) == 21 and not any(pairs.values())


def test_separated_uses_chebyshev_distance():
    assert separated((1, 1), (3, 2))
    assert not separated((1, 1), (2, 2))
    assert separated(3, 5) and not separated(3, 4)


# discovery and confinement


def test_discover_qrt_factor(qrt):
    found = discover_factors(qrt, select=range(2, 7))
    assert P("1+t+t^2*u") in found


def test_discover_somos_nothing(somos):
    assert discover_factors(somos, units=R_SOMOS, select=range(5, 11)) == []


def test_discover_nonqrt_factor(nonqrt):
    assert P("1+t") in discover_factors(nonqrt, select=range(2, 6))


def test_qrt_profile_confined(qrt):
    prof = confinement_profile(evolve(qrt2(), 11), P("1+t+t^2*u"))
    assert prof.classification == CONFINED and prof.width == 3
    assert prof.block == (3, 4, 5) and prof.block_ords == (1, -2, 1)
    assert prof.label == "confined(3)"


def test_qrt_each_index_adds_one_confined_factor(qrt):
    table = confinement_table(qrt, R_TU)
    entries = {}
    for d, prof in table:
        entries.setdefault(d.entry, []).append((d, prof))
    for l in range(2, 9):
        found = entries.get(l, [])
        assert len(found) == 1, l
        d, prof = found[0]
        assert prof.label == "confined(3)" and prof.block_ords == (1, -2, 1)
        assert prof.block == (l, l + 1, l + 2)


def test_nonqrt_profile_unconfined(nonqrt):
    prof = confinement_profile(nonqrt, P("1+t"))
    assert prof.classification == UNCONFINED
    assert prof.magnitudes == (1, 3, 5, 12, 19, 45, 71)
    assert tuple(alternating_orders(1, 3, 2, 8).values()) == prof.magnitudes


def test_absent_factor_is_confined_width_zero(qrt):
    prof = confinement_profile(qrt, P("7+t+u"))
    assert prof.classification == CONFINED and prof.width == 0


def test_classify_needs_margins():
    f = P("1+t")
    assert classify({1: 0, 2: 0, 3: 1, 4: -1, 5: 0, 6: 0}, f).label == "confined(2)"
    assert classify({1: 0, 2: 0, 3: 1, 4: -1, 5: 0}, f).classification == INCONCLUSIVE
    assert classify({1: 0, 2: 1, 3: -2, 4: 4}, f).classification == UNCONFINED
    assert classify({1: 0, 2: 1, 3: -2, 4: 1}, f).classification == INCONCLUSIVE


def test_alternating_orders_recurrence():
    d = alternating_orders(1, 3, 2, 10)
    for m in range(2, 9):
        c = 2 if m % 2 == 0 else 3
        assert d[m + 2] == c * d[m + 1] - d[m]


# irreducibility


def test_somos_numerator_irreducible():
    f = parse_poly("b*d+c^2", VarTable("abcd"))
    v = irreducible_certify(f, R_SOMOS, seed=1)
    assert v.kind == IRREDUCIBLE and replay_certificate(f, R_SOMOS, v.certificate)


def test_square_reducible_via_candidate():
    v = irreducible_certify(P("(1+t)^2"), R_TU, candidates=[P("1+t")])
    assert v.kind == REDUCIBLE and v.witness == P("1+t")


def test_content_witness():
    vt = VarTable(("x", "y"))
    v = irreducible_certify(parse_poly("x*y+x", vt), UnitSpec())
    assert v.kind == REDUCIBLE and v.witness == parse_poly("x", vt)


def test_somos_terms_certified(somos):
    for n in range(5, 10):
        num = somos.rational(n).num
        v = irreducible_certify(num, R_SOMOS, seed=n)
        assert v.irreducible, n
        assert replay_certificate(num, R_SOMOS, v.certificate)
        assert v.certificate.to_json()["seed"] == n


def test_replay_rejects_tampered_certificate():
    from dataclasses import replace

    f = parse_poly("b*d+c^2", VarTable("abcd"))
    cert = irreducible_certify(f, R_SOMOS, seed=3).certificate
    assert not replay_certificate(f, R_SOMOS, replace(cert, degree=cert.degree + 1))
    assert not replay_certificate(f, R_SOMOS, replace(cert, primes=cert.primes[:2], patterns=cert.patterns[:2]))


def test_unknown_when_no_proof_exists():
    # x^4 + 1 splits modulo every prime, so specialization alone can never certify it
    v = irreducible_certify(P("t^4+1+0*u"), R_TU, max_retries=3)
    assert v.kind == UNKNOWN and v.retries == 3


def test_subset_degrees():
    assert subset_degrees({1: 2, 3: 1}) == {0, 1, 2, 3, 4, 5}
    assert subset_degrees({5: 1}) == {0, 5}


@settings(max_examples=30)
@given(nonzero_polys(vt=TU, max_terms=4, max_degree=4))
def test_irreducible_verdicts_agree_with_sympy(f):
    assume(not f.is_constant() and not f.is_monomial())
    v = irreducible_certify(f, R_TU, seed=0)
    core = f.unshift_monomial(f.monomial_content())
    factors = sympy.factor_list(to_sympy(core))[1]
    nontrivial = [p for p, e in factors if not p.is_Number]
    sympy_irreducible = len(nontrivial) == 1 and factors[0][1] == 1 and not any(
        sympy.Poly(p, *sympy.symbols(TU.names)).is_monomial for p, _ in factors
    )
    if v.kind == IRREDUCIBLE:
        assert sympy_irreducible
        assert replay_certificate(f, R_TU, v.certificate)
    elif v.kind == REDUCIBLE:
        assert not sympy_irreducible
        assert sympy.rem(to_sympy(f), to_sympy(v.witness)) == 0


def test_certificate_is_seed_deterministic():
    f = parse_poly("b*d+c^2+a*b", VarTable("abcd"))
    a = irreducible_certify(f, R_SOMOS, seed=42)
    b = irreducible_certify(f, R_SOMOS, seed=42)
    assert a == b


# degree growth


def test_qrt_degrees_quadratic(qrt):
    g = degree_growth(qrt)
    second = g.second_differences[4:]
    assert max(second) - min(second) <= 2 and max(second) <= 4
    assert g.ratios[-1] < 1.5


def test_nonqrt_degrees_exponential(nonqrt):
    g = degree_growth(nonqrt)
    assert all(r > 1.5 for r in g.ratios[-3:])


def test_constant_sequence_degrees():
    g = degree_growth([(n, RationalFunction.constant(TU, 3)) for n in range(5)])
    assert set(g.degrees) == {0}


def test_term_degree_matches_rational(qrt):
    for n in qrt.indices():
        r = qrt.rational(n)
        assert term_degree(qrt[n]) == max(r.num.degree(), r.den.degree())
