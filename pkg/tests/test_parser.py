from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modsolve.parser import ParseError, parse_polynomial, parse_system
from modsolve.poly import Ring
from test_poly import polys

R2 = Ring(["x", "y"])


def test_example_system():
    ring, gens = parse_system("vars x1 x2;\nx2^10\nx1*x2^3+x2^5\nx1^11")
    assert ring.variables == ("x1", "x2")
    assert [str(g) for g in gens] == ["x2^10", "x1*x2^3 + x2^5", "x1^11"]


def test_expansion():
    ring, (f,) = parse_system("vars x y;\n(x+y)^2 - 1")
    x, y = ring.gens()
    assert f == x ** 2 + 2 * x * y + y ** 2 - 1


def test_zero_only_system_is_rejected():
    with pytest.raises(ParseError):
        parse_system("vars x;\n0")


@pytest.mark.parametrize("text,expected", [
    ("-x^2", "-x^2"),
    ("2x y", "2*x*y"),
    ("x**2 - 3/4*y", "x^2 - 3/4*y"),
    ("-(x - y)^3", "-x^3 + 3*x^2*y - 3*x*y^2 + y^3"),
    ("x*y/2 + 1;", "1/2*x*y + 1"),
    ("2^3*x", "8*x"),
    ("x - -y", "x + y"),
])
def test_precedence(text, expected):
    assert str(parse_polynomial(text, R2)) == expected


@pytest.mark.parametrize("text,line,column", [
    ("vars x y;\nx + z", 2, 5),
    ("vars x y;\nx +* y", 2, 4),
    ("vars x y;\n\nx + (y", 3, 7),
    ("x + y", 1, 1),
    ("vars x y;\nx / y", 2, 3),
    ("vars x y;\nx / 0", 2, 3),
    ("vars x y;\nx $ y", 2, 3),
])
def test_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_system(text)
    assert info.value.line == line
    assert info.value.column == column


def test_comments_and_commas():
    ring, gens = parse_system("# header\nvars a, b;  # decl\n\na - b  # one\nb^2 - 2\n")
    assert ring.variables == ("a", "b")
    assert len(gens) == 2


@settings(max_examples=100, deadline=None)
@given(polys(Ring(["x", "y"]), rational=True))
def test_rendering_round_trips(f):
    assert parse_polynomial(str(f), f.ring) == f
