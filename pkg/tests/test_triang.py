from itertools import combinations

import pytest

from conftest import system
from corpus import corpus
from modsolve.groebner import reduced_groebner
from modsolve.ideals import DimensionError, Ideal, ideal_contains, vdim
from modsolve.poly import Ring
from modsolve.triang import (TriangularSet, extract_leading_coeffs, triang_m,
                             triang_m_disjoint)
from modsolve.unisolve import solve_triang

R2 = Ring(["x1", "x2"])
x1, x2 = R2.gens()


def test_example_decomposition(example_ideal):
    D = triang_m(example_ideal)
    assert D.strings() == [["x2^7", "x1 + x2^2"], ["x2^3", "x1^11"]]
    assert [F.vdim() for F in D] == [7, 33]
    assert D.canonical().strings() == D.strings()


def test_extract_leading_coeffs(example_ideal):
    lead = extract_leading_coeffs(example_ideal.groebner())
    assert [str(h) for h in lead] == ["x2^10", "x2^3"]
    assert all(h.ring.variables == ("x2",) for h in lead)
    assert extract_leading_coeffs(reduced_groebner([x2 ** 2 - 1])) == []


def test_leading_coeff_of_linear_chain():
    # G = (x2, x1): lc of x2 in x1 is x2 itself
    from modsolve.groebner import GroebnerBasis
    G = GroebnerBasis(R2, (x2, x1))
    assert [str(h) for h in extract_leading_coeffs(G)] == ["x2"]


def test_simple_decompositions():
    assert triang_m(Ideal([x1 - 1, x2 - 2])).strings() == [["x2 - 2", "x1 - 1"]]
    assert triang_m(Ideal([x1 ** 2 - x2, x2 ** 2 - x1])).strings() == [["x2^4 - x2", "x1 - x2^2"]]
    assert len(triang_m(Ideal([R2.one()]))) == 0
    with pytest.raises(DimensionError):
        triang_m(Ideal([x1]))


def test_disjoint_examples(example_ideal):
    assert triang_m_disjoint(Ideal([x2 ** 2, x1])).strings() == [["x2^2", "x1"]]
    assert triang_m_disjoint(Ideal([x2 ** 2 - x2, x1 - x2])).strings() == [["x2^2 - x2", "x1 - x2"]]
    D = triang_m_disjoint(example_ideal)
    for A, B in combinations(D.sets, 2):
        assert reduced_groebner(list(A) + list(B)).is_unit()


def test_triangular_set_validation():
    with pytest.raises(ValueError):
        TriangularSet(R2, (x2 ** 2,))
    with pytest.raises(ValueError):
        TriangularSet(R2, (x1 ** 2, x2))
    with pytest.raises(ValueError):
        TriangularSet(R2, (2 * x2, x1))
    with pytest.raises(ValueError):
        TriangularSet(R2, (x2, x1 * x2 + 1))


@pytest.mark.parametrize("I", corpus()[:60], ids=lambda I: f"vdim{I.vdim()}")
def test_invariants_on_corpus(I):
    D = triang_m(I)
    assert sum(F.vdim() for F in D) == I.vdim()
    for F in D:
        assert ideal_contains(I, F.ideal())
        assert vdim(F.ideal()) == F.vdim()
        # each set is already its own reduced lex basis
        assert reduced_groebner(list(F)) == F.basis()
    assert triang_m(Ideal(I.generators)).strings() == D.strings()


@pytest.mark.parametrize("I", corpus()[:20], ids=lambda I: f"vdim{I.vdim()}")
def test_zero_sets_match(I):
    # every point of every set is a zero of I, and every zero of I shows up
    D = triang_m(I)
    S = solve_triang(D, generators=I.generators)
    assert all(P.residual <= 1e-8 for P in S)
    Dd = triang_m_disjoint(I)
    Sd = solve_triang(Dd, generators=I.generators)
    assert all(P.residual <= 1e-8 for P in Sd)
    for P in S:
        assert any(max(abs(a - b) for a, b in zip(P.coordinates, Q.coordinates)) < 1e-6
                   for Q in Sd)


def test_named_three_variable_system():
    I = system("vars x y z\nx^2 + y + z - 1\nx + y^2 + z - 1\nx + y + z^2 - 1\n")
    D = triang_m(I)
    assert D.total_vdim() == I.vdim() == 8
