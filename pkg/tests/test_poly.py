from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from modsolve.poly import Polynomial, Ring, leading_data, lex_compare

R2 = Ring(["x1", "x2"])
R3 = Ring(["x1", "x2", "x3"])
SYMS = sympy.symbols("x1 x2 x3")


def polys(ring, max_terms=5, max_deg=4, rational=False):
    n = ring.nvars
    coeff = (st.fractions(min_value=-20, max_value=20, max_denominator=7) if rational
             else st.integers(-9, 9))
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * n), coeff)
    return st.lists(term, max_size=max_terms).map(
        lambda ts: ring.from_exponents(_merge(ts)))


def _merge(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return out


def to_sympy(f: Polynomial):
    syms = SYMS[:f.ring.nvars]
    return sum((sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
                else sympy.Integer(c)) * sympy.prod([s ** e for s, e in zip(syms, exps)])
               for exps, c in f.exponent_terms()) if f.terms else sympy.Integer(0)


def test_lex_compare_examples():
    assert lex_compare((1, 0), (0, 5)) == 1
    assert lex_compare((1, 1), (1, 0)) == 1
    assert lex_compare((2, 3), (2, 3)) == 0
    assert lex_compare((0, 5), (1, 0)) == -1
    with pytest.raises(ValueError):
        lex_compare((1,), (1, 0))


@given(st.tuples(*[st.integers(0, 50)] * 3), st.tuples(*[st.integers(0, 50)] * 3))
def test_packed_order_is_lex(a, b):
    expect = (a > b) - (a < b)
    assert lex_compare(a, b) == expect
    ma, mb = R3.pack(a), R3.pack(b)
    assert ((ma > mb) - (ma < mb)) == expect
    assert R3.unpack(ma + mb) == tuple(x + y for x, y in zip(a, b))
    assert R3.divides(ma, mb) == all(x <= y for x, y in zip(a, b))
    assert R3.unpack(R3.lcm(ma, mb)) == tuple(max(x, y) for x, y in zip(a, b))


def test_leading_data_examples():
    x1, x2 = R2.gens()
    le, lc, lm, lt = leading_data(x1 * x2 ** 3 + x2 ** 5)
    assert le == (1, 3) and lm == x1 * x2 ** 3 and lc == 1
    le, lc, lm, lt = leading_data(x2 ** 10)
    assert lt == x2 ** 10 and lc == 1
    le, lc, lm, lt = leading_data(R2.constant(3))
    assert le == (0, 0) and lc == 3
    with pytest.raises(ZeroDivisionError):
        leading_data(R2.zero())


@settings(max_examples=150, deadline=None)
@given(polys(R3, rational=True), polys(R3, rational=True))
def test_arithmetic_matches_sympy(f, g):
    F, G = to_sympy(f), to_sympy(g)
    assert sympy.expand(to_sympy(f + g) - (F + G)) == 0
    assert sympy.expand(to_sympy(f - g) - (F - G)) == 0
    assert sympy.expand(to_sympy(f * g) - F * G) == 0


@settings(max_examples=100, deadline=None)
@given(polys(R2))
def test_leading_term_matches_sympy(f):
    if f.is_zero():
        return
    P = sympy.Poly(to_sympy(f), *SYMS[:2])
    assert f.le() == P.monoms(order="lex")[0]
    assert f.lc() == P.coeffs(order="lex")[0]


@settings(max_examples=100, deadline=None)
@given(polys(R2), polys(R2), st.sampled_from([5, 7, 101, 1000003]))
def test_mod_p_commutes_with_arithmetic(f, g, p):
    assert (f * g).reduce_mod(p) == f.reduce_mod(p) * g.reduce_mod(p)
    assert (f + g).reduce_mod(p) == f.reduce_mod(p) + g.reduce_mod(p)


@settings(max_examples=100, deadline=None)
@given(polys(R2, max_terms=3, max_deg=3), polys(R2, max_terms=3, max_deg=3))
def test_exact_quotient_inverts_multiplication(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_quotient(g) == f


def test_exact_quotient_rejects_non_divisor():
    x1, x2 = R2.gens()
    with pytest.raises(ArithmeticError):
        (x1 + 1).exact_quotient(x2)


def test_rendering_is_canonical():
    x1, x2 = R2.gens()
    f = x2 ** 2 - Fraction(1, 2) * x1 ** 2 + 3 - x1 * x2
    assert str(f) == "-1/2*x1^2 - x1*x2 + x2^2 + 3"
    assert str(R2.zero()) == "0"
    assert str(R2.with_modulus(7).from_exponents({(1, 0): -1})) == "6*x1"


def test_main_variable_structure():
    x1, x2 = R2.gens()
    f = 3 * x1 ** 2 * x2 + x1 ** 2 + x2 + 5
    lc = f.leading_coefficient_in_first()
    assert lc.ring.variables == ("x2",)
    assert str(lc) == "3*x2 + 1"
    assert f.degree(0) == 2 and f.degree("x2") == 1


def test_monic_and_evaluate():
    x1, x2 = R2.gens()
    f = 2 * x1 + 4 * x2
    assert f.monic() == x1 + 2 * x2
    assert f.evaluate([Fraction(1, 2), 1]) == 5
    assert R2.with_modulus(7).from_exponents({(1, 0): 3, (0, 0): 1}).monic().lc() == 1


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring([])
    with pytest.raises(ValueError):
        Ring(["x", "x"])
    with pytest.raises(ValueError):
        R2.gen(0) + R3.gen(0)
