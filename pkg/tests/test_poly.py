from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import polys
from gerbeforms.errors import ParseError, ShapeError
from gerbeforms.poly import Poly, format_poly, parse_poly

x1, x2, x3 = (Poly.var(i, 3) for i in (1, 2, 3))


def test_difference_of_squares():
    assert (x1 + 1) * (x1 - 1) == x1 ** 2 - 1


def test_additive_identity():
    p = x1 * x2 + Fraction(1, 3)
    assert p + Poly.zero(3) == p


def test_monomial_product():
    a = Poly(3, {(1, 1, 0): Fraction(3, 2)})
    b = Poly(3, {(0, 1, 0): Fraction(2, 3)})
    assert a * b == Poly(3, {(1, 2, 0): 1})


def test_no_stored_zeros():
    p = x1 - x1
    assert p.is_zero() and p.terms == {} and p.degree() == -1
    assert Poly(2, {(1, 0): 0}).terms == {}


def test_dimension_mismatch():
    with pytest.raises(ShapeError):
        x1 + Poly.var(1, 2)
    with pytest.raises(ShapeError):
        Poly(2, {(1, 0, 0): 1})


def test_spec_syntax_example():
    p = parse_poly("3/2*x1^2*x2 - x3 + 1", 3)
    assert p == Fraction(3, 2) * x1 ** 2 * x2 - x3 + 1
    assert format_poly(p) == "3/2*x1^2*x2 - x3 + 1"


def test_format_zero_and_constants():
    assert format_poly(Poly.zero(2)) == "0"
    assert format_poly(Poly.const(Fraction(-1, 2), 2)) == "-1/2"


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x1 + * x2", 2)
    assert (exc.value.line, exc.value.column) == (1, 6)
    with pytest.raises(ParseError):
        parse_poly("x4", 2)
    with pytest.raises(ParseError):
        parse_poly("1/0", 2)
    with pytest.raises(ParseError):
        parse_poly("x1^100000", 2)
    with pytest.raises(ParseError):
        parse_poly("(" * 5000 + "x1" + ")" * 5000, 2)


def test_derivative_and_eval():
    p = x1 ** 2 * x2 + 3 * x3
    assert p.diff(1) == 2 * x1 * x2
    assert p.eval_at([1, 2, Fraction(1, 3)]) == 3


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Poly.zero(2)


@given(polys(dim=3))
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), 3) == p


@given(st.text(max_size=40))
def test_parser_is_total(text):
    try:
        parse_poly(text, 2)
    except ParseError:
        pass
