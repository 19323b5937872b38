from fractions import Fraction

from hypothesis import strategies as st

from coprimality_lab.poly import MultiPoly, VarTable

NAMES = ("a", "b", "c", "d", "e")
VT = VarTable(NAMES)
SMALL_VT = VarTable(("t", "u"))

coefficients = st.integers(-20, 20).filter(bool)
big_coefficients = st.integers(-(10**30), 10**30).filter(bool)


@st.composite
def exponent_vectors(draw, arity, max_degree=6):
    left = draw(st.integers(0, max_degree))
    out = []
    for _ in range(arity):
        e = draw(st.integers(0, left))
        out.append(e)
        left -= e
    return draw(st.permutations(out))


@st.composite
def polys(draw, vt=VT, max_terms=6, max_degree=6, coeffs=coefficients, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        terms[tuple(draw(exponent_vectors(vt.arity, max_degree)))] = draw(coeffs)
    f = MultiPoly.from_terms(vt, terms)
    if nonzero and not f:
        f = MultiPoly.one(vt)
    return f


def nonzero_polys(vt=VT, **kw):
    return polys(vt=vt, nonzero=True, **kw)


nonzero_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30).filter(bool)


def points(names=NAMES):
    return st.fixed_dictionaries({n: nonzero_fractions for n in names})


rationals = st.fractions(max_denominator=50)
unit_fractions = st.builds(Fraction, st.integers(1, 9), st.integers(1, 9))
