import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coprimality_lab.errors import OrbitZeroDivision, ParseError, SingularEvolution, UsageError
from coprimality_lab.poly import VarTable
from coprimality_lab.recurrence import (
    evolve,
    get_builtin,
    nonqrt3,
    numeric_evolve,
    parse_poly,
    parse_spec,
    qrt2,
    somos4,
    somos4_backward,
    somos_to_qrt,
)
from coprimality_lab.ring import reduce

from oracle import rational_point

TU = VarTable(("t", "u"))
ABCD = VarTable("abcd")

SOMOS_1111 = [1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209, 83313, 620297]


def rf(num, den, vt):
    return reduce(parse_poly(num, vt), parse_poly(den, vt))


# builtin terms


def test_somos_y5():
    assert evolve(somos4(), 5).rational(5) == rf("b*d+c^2", "a", ABCD)


def test_qrt_x2():
    assert evolve(qrt2(), 3).rational(2) == rf("1+t", "t^2*u", TU)


def test_qrt_x3():
    assert evolve(qrt2(), 4).rational(3) == rf("t*u*(1+t+t^2*u)", "(1+t)^2", TU)


def test_nonqrt_x3():
    assert evolve(nonqrt3(), 4).rational(3) == rf("t^5*u^2*(1+t+t^3*u)", "(1+t)^3", TU)


def test_initial_terms_are_symbols():
    y = evolve(somos4(), 6)
    assert [y.rational(n).to_text() for n in range(1, 5)] == ["a", "b", "c", "d"]
    assert y.first == 1 and y.last == 6 and len(y) == 6


def test_evolve_needs_order_terms():
    with pytest.raises(UsageError):
        evolve(somos4(), 3)


def test_singular_update_raises():
    # the first step gives an identically zero term, the second divides by it
    spec = parse_spec("x[n+1] = 1/x[n] - 1/x[n]", initial_symbols=("p",))
    assert evolve(spec, 2).rational(1).is_zero()
    with pytest.raises(SingularEvolution) as info:
        evolve(spec, 3)
    assert info.value.where == 2


def test_get_builtin_unknown():
    with pytest.raises(UsageError):
        get_builtin("somos5")


# numeric orbits


def test_somos_numeric_orbit():
    assert numeric_evolve(somos4(), [1, 1, 1, 1], 14) == SOMOS_1111


def test_somos_integer_through_20():
    orbit = numeric_evolve(somos4(), [1, 1, 1, 1], 20)
    assert all(v.denominator == 1 for v in orbit)
    # independent recomputation with plain integer division
    ref = [1, 1, 1, 1]
    while len(ref) < 20:
        num = ref[-1] * ref[-3] + ref[-2] ** 2
        assert num % ref[-4] == 0
        ref.append(num // ref[-4])
    assert [int(v) for v in orbit] == ref


def test_qrt_numeric_at_one():
    assert numeric_evolve(qrt2(), [1, 1], 3)[2] == 2


def test_numeric_zero_division():
    with pytest.raises(OrbitZeroDivision):
        numeric_evolve(qrt2(), [0, 1], 3)


def test_numeric_evolve_checks_arity():
    with pytest.raises(UsageError):
        numeric_evolve(somos4(), [1, 1, 1], 6)


@pytest.mark.parametrize("name,count", [("somos4", 13), ("qrt2", 13), ("nonqrt3", 9)])
def test_symbolic_matches_numeric(name, count):
    spec = get_builtin(name)
    seq = evolve(spec, count)
    rng = random.Random(name)
    checked = 0
    while checked < 100:
        pt = rational_point(rng, spec.initial_symbols)
        try:
            orbit = numeric_evolve(spec, [pt[s] for s in spec.initial_symbols], count)
        except OrbitZeroDivision:
            continue
        for n, value in zip(seq.indices(), orbit):
            assert seq[n].evaluate(pt) == value
        checked += 1


@settings(max_examples=30)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool), min_size=4, max_size=4))
def test_somos_backward_reverses_forward(init):
    try:
        orbit = numeric_evolve(somos4(), init, 10)
        back = somos4_backward(orbit[4:8], 4)
    except ZeroDivisionError:
        return
    assert back == [orbit[3], orbit[2], orbit[1], orbit[0]]


def test_somos_backward_symbolic():
    y = evolve(somos4(), 8)
    back = somos4_backward([y[n] for n in range(5, 9)], 4)
    assert [b.to_rational().to_text() for b in back] == ["d", "c", "b", "a"]


# change of variables


def test_somos_to_qrt_initial_values():
    x = somos_to_qrt(evolve(somos4(), 8))
    assert x.vars.names == ("t", "u")
    assert x.rational(0).to_text() == "u"
    assert x.rational(1).to_text() == "t"


def test_somos_to_qrt_matches_direct_qrt():
    x = somos_to_qrt(evolve(somos4(), 12))
    q = evolve(qrt2(), x.last + 1)
    for n in x.indices():
        assert x.rational(n) == q.rational(n), n


def test_somos_to_qrt_rejects_other_alphabets():
    with pytest.raises(UsageError):
        somos_to_qrt(evolve(qrt2(), 6))


# parsing


def test_parse_qrt_text():
    spec = parse_spec("x[n+1] = (x[n]+1)/(x[n-1]*x[n]^2)")
    assert spec.order == 2 and spec.initial_symbols == ("x0", "x1")
    upd = spec.update_rational()
    assert upd == reduce(parse_poly("X0+1", upd.vars), parse_poly("X1*X0^2", upd.vars))


def test_parse_somos_text():
    spec = parse_spec("y[n+2] = (y[n+1]*y[n-1]+y[n]^2)/y[n-2]")
    assert spec.order == 4
    upd = spec.update_rational()
    assert upd == reduce(parse_poly("X0*X2+X1^2", upd.vars), parse_poly("X3", upd.vars))


def test_parse_parameters_become_symbols():
    spec = parse_spec("x[n+1] = k*x[n] - x[n-1]", initial_symbols=("p", "q"))
    assert spec.parameters == ("k",)
    seq = evolve(spec, 4)
    vt = seq.vars
    assert seq.rational(3) == reduce(parse_poly("k*(k*q-p)-q", vt), parse_poly("1", vt))


@pytest.mark.parametrize("text", [
    "x[n+1] = (x[n]+1",
    "x[n+1] = x[n] +* 2",
    "x[n+1] = 3",
    "x[n+1] = y[n]",
    "x[n+1] = x[n+1] + 1",
    "x[n+1] = x[n]/(x[n-1]-x[n-1])",
    "x[n+1] = x[n]^(1/2)",
    "= x[n]",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_spec("x[n+1] = x[n] $ 2")
    assert info.value.position is not None


def test_initial_symbol_count_checked():
    with pytest.raises(UsageError):
        parse_spec("x[n+1] = x[n] + x[n-1]", initial_symbols=("p",))


def test_evolution_is_deterministic():
    a = evolve(nonqrt3(), 9)
    b = evolve(nonqrt3(), 9)
    assert [a.rational(n).to_text() for n in a.indices()] == [b.rational(n).to_text() for n in b.indices()]


def test_numeric_params():
    spec = parse_spec("x[n+1] = k*x[n] - x[n-1]", initial_symbols=("p", "q"))
    assert numeric_evolve(spec, [1, 2], 4, params={"k": 3}) == [1, 2, 5, 13]
    with pytest.raises(UsageError):
        numeric_evolve(spec, [1, 2], 4)
    assert numeric_evolve(spec, [Fraction(1, 2), 0], 3, params={"k": 1})[2] == Fraction(-1, 2)
