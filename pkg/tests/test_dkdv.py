import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coprimality_lab.dkdv import (
    BILINEAR,
    DELTA,
    bilinear_boundary,
    bilinear_residual_failures,
    boundary_transform,
    delta_tilde,
    evolve_bilinear,
    evolve_bilinear_tilde,
    evolve_nonlinear,
    nonlinear_boundary,
    nonlinear_residual_failures,
    parse_delta,
    ring_B,
    run_pipeline,
    symbolic_bilinear,
    symbolic_nonlinear,
    symbolic_tilde,
    tilde_residual_failures,
    w_from_a,
    w_from_a_tilde,
    w_initial_names,
    w_name,
    window_mismatches,
)
from coprimality_lab.errors import UsageError
from coprimality_lab.poly import VarTable
from coprimality_lab.recurrence import parse_poly
from coprimality_lab.ring import FactorBasis, Factored, RationalFunction, is_laurent, reduce

from oracle import rational_point


def rf(num, den, vt):
    return reduce(parse_poly(num, vt), parse_poly(den, vt))


# independent numeric sweeps written straight from the equations


def sweep_bilinear(x, y, d, mmax, nmax):
    a = {(0, 0): 1, (0, 1): 1}
    for m in range(1, mmax + 1):
        a[m, 0], a[m, 1] = 1, x[m]
    for n in range(2, nmax + 1):
        a[0, n] = y[n]
    for n in range(1, nmax):
        for m in range(1, mmax + 1):
            a[m, n + 1] = (a[m - 1, n] * a[m, n] + d * a[m - 1, n + 1] * a[m, n - 1]) / ((1 + d) * a[m - 1, n - 1])
    return a


def sweep_tilde(xt, yt, dt, mmax, nmax):
    a = {(0, 0): 1, (1, 0): 1}
    for n in range(1, nmax + 1):
        a[0, n], a[1, n] = 1, xt[n]
    for m in range(2, mmax + 1):
        a[m, 0] = yt[m]
    for m in range(1, mmax):
        for n in range(1, nmax + 1):
            a[m + 1, n] = (dt * a[m + 1, n - 1] * a[m - 1, n] + a[m, n] * a[m, n - 1]) / ((1 + dt) * a[m - 1, n - 1])
    return a


def sweep_nonlinear(w0, w1, d, mmax, nmax):
    w = {(m, 0): w0[m] for m in range(1, mmax + 1)}
    w.update({(1, n): w1[n] for n in range(1, nmax + 1)})
    for n in range(nmax):
        for m in range(1, mmax):
            w[m + 1, n + 1] = 1 / (1 / w[m, n] - d / (1 + d) * (w[m, n + 1] - w[m + 1, n]))
    return w


@pytest.fixture(scope="module")
def bilinear44():
    bd = symbolic_bilinear(4, 4)
    return bd, evolve_bilinear(bd, 4, 4)


# bilinear


def test_first_interior_bilinear_cell(bilinear44):
    bd, a = bilinear44
    vt = bd.basis.vars
    assert a.rational(1, 2) == rf("x1 + delta*y2", "1+delta", vt)


def test_bilinear_boundary_passthrough(bilinear44):
    bd, a = bilinear44
    for m in range(1, 5):
        assert a.rational(m, 1).to_text() == f"x{m}"
        assert a.rational(m, 0).to_text() == "1"
    for n in range(2, 5):
        assert a.rational(0, n).to_text() == f"y{n}"


def test_bilinear_matches_numeric_sweep(bilinear44):
    bd, a = bilinear44
    rng = random.Random(11)
    names = bd.basis.vars.names
    done = 0
    while done < 50:
        pt = rational_point(rng, names)
        if pt[DELTA] in (-1, 0):
            continue
        x = {m: pt[f"x{m}"] for m in range(1, 5)}
        y = {n: pt[f"y{n}"] for n in range(2, 5)}
        try:
            ref = sweep_bilinear(x, y, pt[DELTA], 4, 4)
        except ZeroDivisionError:
            continue
        for c, v in a.items():
            assert v.evaluate(pt) == ref[c], c
        done += 1


def test_bilinear_residuals_vanish(bilinear44):
    assert bilinear_residual_failures(bilinear44[1]) == []


def test_tampered_cell_is_reported(bilinear44):
    bd, a = bilinear44
    vals = dict(a.values)
    vals[2, 3] = vals[2, 3] + 1
    bad = type(a)("a", vals, a.delta, a.basis)
    assert (2, 3) in bilinear_residual_failures(bad)


def test_bilinear_max_sum_limits_cells():
    a = evolve_bilinear(symbolic_bilinear(4, 4), 4, 4, max_sum=5)
    assert all(m + n <= 5 for m, n in a.cells())
    assert (3, 2) in a and (3, 3) not in a


def test_wrong_scheme_rejected():
    with pytest.raises(UsageError):
        evolve_bilinear(symbolic_nonlinear(2, 2), 2, 2)
    with pytest.raises(UsageError):
        w_from_a_tilde(evolve_bilinear(symbolic_bilinear(2, 2), 2, 2))


def test_numeric_bilinear_boundary():
    d = Fraction(1, 3)
    x = {1: Fraction(2), 2: Fraction(-1, 2), 3: Fraction(5)}
    y = {2: Fraction(3), 3: Fraction(1, 7)}
    a = evolve_bilinear(bilinear_boundary(x, y, d), 3, 3)
    ref = sweep_bilinear(x, y, d, 3, 3)
    assert dict(a.values) == ref


# interchanged system


def test_first_interior_tilde_cell():
    bd = symbolic_tilde(3, 3)
    at = evolve_bilinear_tilde(bd, 3, 3)
    vt = bd.basis.vars
    dt = delta_tilde(RationalFunction.gen(vt, DELTA))
    expected = (dt * RationalFunction.gen(vt, "yt2") + RationalFunction.gen(vt, "xt1")) / (1 + dt)
    assert at.rational(2, 1) == expected
    for n in range(1, 4):
        assert at.rational(1, n).to_text() == f"xt{n}"


def test_tilde_matches_numeric_sweep():
    bd = symbolic_tilde(4, 3)
    at = evolve_bilinear_tilde(bd, 4, 3)
    assert tilde_residual_failures(at) == []
    rng = random.Random(12)
    done = 0
    while done < 50:
        pt = rational_point(rng, bd.basis.vars.names)
        d = pt[DELTA]
        if d in (0, -1, Fraction(-1, 2)):
            continue
        xt = {n: pt[f"xt{n}"] for n in range(1, 4)}
        yt = {m: pt[f"yt{m}"] for m in range(2, 5)}
        try:
            ref = sweep_tilde(xt, yt, -d / (1 + 2 * d), 4, 3)
        except ZeroDivisionError:
            continue
        for c, v in at.items():
            assert v.evaluate(pt) == ref[c], c
        done += 1


def test_delta_tilde_is_an_involution():
    vt = VarTable((DELTA,))
    d = RationalFunction.gen(vt, DELTA)
    assert delta_tilde(delta_tilde(d)) == d
    assert delta_tilde(d) == rf("-delta", "1+2*delta", vt)


@given(st.fractions(max_denominator=40).filter(lambda v: v != Fraction(-1, 2)))
def test_delta_tilde_involution_numeric(d):
    if 1 + 2 * delta_tilde(d) == 0:
        return
    assert delta_tilde(delta_tilde(d)) == d


# w from a


def test_w_initial_values_from_a(bilinear44):
    bd, a = bilinear44
    w = w_from_a(a)
    vt = bd.basis.vars
    assert w.rational(1, 0) == rf("1", "x1", vt)
    assert w.rational(2, 0) == rf("x1", "x2", vt)
    assert nonlinear_residual_failures(w) == []


def test_w_from_tilde_satisfies_nonlinear_equation():
    at = evolve_bilinear_tilde(symbolic_tilde(3, 3), 3, 3)
    w = w_from_a_tilde(at)
    assert (1, 1) in w
    assert nonlinear_residual_failures(w) == []


# nonlinear


def test_first_interior_nonlinear_cell():
    bd = symbolic_nonlinear(2, 1)
    w = evolve_nonlinear(bd, 2, 1)
    vt = bd.basis.vars
    g = {n: RationalFunction.gen(vt, n) for n in vt.names}
    c = g[DELTA] / (1 + g[DELTA])
    assert w.rational(2, 1) == 1 / (1 / g["w1_0"] - c * (g["w1_1"] - g["w2_0"]))


def test_nonlinear_degenerates_at_delta_zero():
    w = evolve_nonlinear(symbolic_nonlinear(4, 3, delta="0"), 4, 3)
    for (m, n), v in w.items():
        if m > 1 and n > 0:
            assert v == w[m - 1, n - 1]


@settings(max_examples=25)
@given(st.data())
def test_nonlinear_matches_numeric_sweep(data):
    fr = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool)
    d = data.draw(fr.filter(lambda v: v != -1))
    w0 = {m: data.draw(fr) for m in range(1, 5)}
    w1 = {n: data.draw(fr) for n in range(1, 4)}
    try:
        ref = sweep_nonlinear(w0, w1, d, 4, 3)
    except ZeroDivisionError:
        return
    got = evolve_nonlinear(nonlinear_boundary(w0, w1, d), 4, 3)
    assert dict(got.values) == ref


def test_symbolic_nonlinear_matches_numeric_sweep():
    bd = symbolic_nonlinear(4, 3)
    w = evolve_nonlinear(bd, 4, 3)
    rng = random.Random(13)
    done = 0
    while done < 50:
        pt = rational_point(rng, bd.basis.vars.names)
        if pt[DELTA] == -1:
            continue
        w0 = {m: pt[w_name(m, 0)] for m in range(1, 5)}
        w1 = {n: pt[w_name(1, n)] for n in range(1, 4)}
        try:
            ref = sweep_nonlinear(w0, w1, pt[DELTA], 4, 3)
            vals = {c: v.evaluate(pt) for c, v in w.items()}
        except ZeroDivisionError:
            continue
        assert vals == ref
        done += 1


# correspondence tables


@pytest.fixture(scope="module")
def tables44():
    return boundary_transform(4, 4)


def test_table_identities_hold(tables44):
    assert tables44.identity_failures() == []


def test_table_first_entries(tables44):
    vt = tables44.basis.vars
    assert tables44.x[1].to_rational() == rf("1", "w1_0", vt)
    assert tables44.y[2] == 1 / tables44.beta[1]
    assert tables44.beta[1].to_rational() == rf("1+delta-delta*w1_0*w1_1", "w1_1", vt)


def test_gamma_cleared_form(tables44):
    vt = tables44.basis.vars
    assert tables44.gamma_polys()[0] == parse_poly("delta*w1_0*w1_1 - delta - 1", vt)


def test_w_initial_names():
    assert w_initial_names(2, 2) == ("w1_0", "w2_0", "w1_1", "w1_2")


def test_small_pipeline_agrees():
    res = run_pipeline(3, 3)
    assert res.ok
    assert res.mismatches == {"bilinear": [], "tilde": []}
    assert window_mismatches(res.nonlinear, res.w_bilinear) == []
    assert window_mismatches(res.nonlinear, res.w_tilde) == []


def test_numeric_delta_pipeline_agrees():
    assert run_pipeline(3, 2, delta="2/3").ok


def test_a_terms_are_laurent_in_B():
    top = 6
    tables = boundary_transform(top, top - 1)
    a = evolve_bilinear(tables.bilinear_boundary(), top, top, max_sum=top)
    u = ring_B(tables)
    for c, v in a.items():
        assert is_laurent(v, u), c


@pytest.mark.parametrize("bad", ["0", "-1", "-1/2"])
def test_forbidden_delta_values(bad):
    with pytest.raises(UsageError):
        boundary_transform(2, 2, delta=bad)


def test_parse_delta():
    assert parse_delta("symbolic") is None
    assert parse_delta("3/4") == Fraction(3, 4)
    with pytest.raises(UsageError):
        parse_delta("delta")


def test_bilinear_singular_numeric_data():
    from coprimality_lab.errors import SingularEvolution

    with pytest.raises(SingularEvolution):
        evolve_bilinear(bilinear_boundary({1: 1, 2: 1}, {2: 1}, Fraction(-1)), 2, 3)


def test_unknown_scheme():
    from coprimality_lab.dkdv import BoundaryData

    with pytest.raises(UsageError):
        BoundaryData("other", {}, 1)
    assert BoundaryData(BILINEAR, {}, 1).symbols == ()


def test_factored_and_rational_windows_agree():
    basis = FactorBasis(VarTable((DELTA, "p", "q")))
    g = {n: Factored.gen(basis, n) for n in basis.vars.names}
    a = evolve_bilinear(bilinear_boundary({1: g["p"], 2: g["q"]}, {2: g["p"] + g["q"], 3: g["p"] * g["q"]}, g[DELTA], Factored.constant(basis, 1)), 2, 3)
    vt = basis.vars
    r = {n: RationalFunction.gen(vt, n) for n in vt.names}
    b = evolve_bilinear(bilinear_boundary({1: r["p"], 2: r["q"]}, {2: r["p"] + r["q"], 3: r["p"] * r["q"]}, r[DELTA], RationalFunction.constant(vt, 1)), 2, 3)
    for c in a.cells():
        assert a[c].to_rational() == b[c], c
