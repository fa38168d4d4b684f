import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import system
from corpus import random_polynomial
from modsolve.groebner import (GroebnerBasis, is_groebner, normal_form, reduced_groebner,
                               s_polynomial)
from modsolve.poly import Ring
from test_poly import SYMS, to_sympy

R2 = Ring(["x1", "x2"])
x1, x2 = R2.gens()


def sympy_basis(gens, ring):
    syms = SYMS[:ring.nvars]
    G = sympy.groebner([to_sympy(g) for g in gens], *syms, order="lex")
    return {sympy.expand(sympy.Poly(g, *syms).monic().as_expr()) for g in G.exprs}


def ours_as_sympy(G: GroebnerBasis):
    return {sympy.expand(to_sympy(g)) for g in G}


def test_example_basis_is_itself(example_ideal):
    G = example_ideal.groebner()
    assert [str(g) for g in G] == ["x2^10", "x1*x2^3 + x2^5", "x1^11"]
    assert is_groebner(G.elements)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            assert normal_form(s_polynomial(G[i], G[j]), G.elements).is_zero()


def test_reduced_basis_examples():
    G = reduced_groebner([x1 ** 2 - x2, x2 ** 2 - x1])
    assert [str(g) for g in G] == ["x2^4 - x2", "x1 - x2^2"]
    assert [str(g) for g in reduced_groebner([R2.constant(5)])] == ["1"]
    with pytest.raises(ValueError):
        reduced_groebner([])
    with pytest.raises(ValueError):
        reduced_groebner([R2.zero()])


def test_normal_form_examples():
    g = x1 * x2 + 1
    assert normal_form(g, [g]).is_zero()
    assert normal_form(x1 ** 2, [x1 - x2 ** 2]) == x2 ** 4
    assert normal_form(x2 ** 2, [x1]) == x2 ** 2


def test_s_polynomial_examples():
    f = x1 - x2 ** 2
    assert s_polynomial(f, f).is_zero()
    assert s_polynomial(x1 ** 2, x1 * x2).is_zero()
    assert s_polynomial(f, x2 ** 3) == -x2 ** 5


@pytest.mark.parametrize("seed", range(25))
def test_basis_matches_sympy(seed):
    rng = random.Random(seed)
    n = 2 + seed % 2
    ring = Ring([f"x{i + 1}" for i in range(n)])
    gens = [random_polynomial(rng, ring, 3) for _ in range(n)]
    gens = [g for g in gens if not g.is_zero()]
    G = reduced_groebner(gens)
    assert ours_as_sympy(G) == sympy_basis(gens, ring)
    assert is_groebner(G.elements)


@pytest.mark.parametrize("seed", range(10))
def test_basis_is_canonical_across_generating_sets(seed):
    rng = random.Random(100 + seed)
    gens = [random_polynomial(rng, R2, 3) for _ in range(2)]
    G = reduced_groebner(gens)
    mixed = [gens[0] + gens[1] * random_polynomial(rng, R2, 2), gens[1]] + list(G)
    assert reduced_groebner(mixed) == G


@pytest.mark.parametrize("seed", range(10))
def test_mod_p_basis_matches_reduction(seed):
    # generic primes: basis over F_p equals the reduced rational basis mod p
    rng = random.Random(200 + seed)
    gens = [random_polynomial(rng, R2, 3) for _ in range(2)]
    p = 1000003
    G = reduced_groebner(gens)
    Gp = reduced_groebner([g.reduce_mod(p) for g in gens])
    assert [g.reduce_mod(p) for g in G] == list(Gp)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4),
       st.tuples(st.integers(0, 6), st.integers(0, 6)))
def test_membership_in_monomial_ideals(gens, probe):
    ring = R2
    G = reduced_groebner([ring.from_exponents({e: 1}) for e in gens])
    f = ring.from_exponents({probe: 1})
    expect = any(all(a <= b for a, b in zip(e, probe)) for e in gens)
    assert G.contains(f) == expect


def test_membership_of_combinations():
    I = system("vars x y z\nx^2 + y*z - 2\ny^2 - x*z + 1\nz^3 - x - 3\n")
    G = I.groebner()
    x, y, z = I.ring.gens()
    f = (x * y - 3) * I.generators[0] + z ** 2 * I.generators[2]
    assert G.contains(f)
    assert not G.contains(f + 1)
