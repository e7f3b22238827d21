from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import forms, homogeneous_polys
from folex import catalog
from folex.forms import DiffForm, differential
from folex.grammar import (
    HomogeneityError,
    ParseError,
    format_section,
    parse_form,
    parse_poly,
    parse_section,
)
from folex.pfaff import make_section
from folex.poly import Poly


def test_pencil_form():
    w = parse_form("x0*dx1 - x1*dx0")
    assert w == DiffForm(2, 1, {(1,): Poly.var(2, 0), (0,): -Poly.var(2, 1)})


def test_repeated_dx_collapses():
    w = parse_form("dx0^dx0", 4)
    assert w.is_zero() and w.q == 2


def test_mixed_degree_is_homogeneity_error():
    with pytest.raises(HomogeneityError):
        parse_form("x0*dx1 + dx0")
    with pytest.raises(HomogeneityError):
        parse_poly("x0^2 + x1", homogeneous=True)
    assert parse_poly("x0^2 + x1").degree == 2


def test_rational_coefficients_and_exponents():
    p = parse_poly("3/2*x0^2*x1 - (x0 + x1)^2", 2)
    assert p == Poly(2, {(2, 1): Fraction(3, 2), (2, 0): -1, (1, 1): -2, (0, 2): -1})


def test_wedge_and_operators():
    assert parse_form("dx0^dx1", 3) == -parse_form("dx1^dx0", 3)
    assert parse_form("iR(dx0^dx1)", 2) == parse_form("x0*dx1 - x1*dx0", 2)
    assert parse_form("d(x0^3 + x0*x1*x2)", 3) == differential(parse_poly("x0^3 + x0*x1*x2", 3))
    assert parse_form("(x0*dx1)^(x1*dx2)", 3) == parse_form("x0*x1*dx1^dx2", 3)


@pytest.mark.parametrize("text,pos", [("x0 + $", 5), ("x0 *", 4), ("(x0 + x1", 8), ("x0 / x1", 5)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.position == pos


def test_section_header():
    s = parse_section("n=3 q=1 k=2\nx0*dx1 - x1*dx0")
    assert (s.n, s.q, s.k) == (3, 1, 2)
    with pytest.raises(ParseError):
        parse_section("n=3 q=1 k=3\nx0*dx1 - x1*dx0")
    with pytest.raises(ParseError):
        parse_section("n=3 q=1 k=2\nx0*dx1 - x1*dx0", n=4)
    assert parse_section("x0*dx1 - x1*dx0", n=4).n == 4


def test_section_round_trip_catalog():
    for s in (catalog.pencil(3), catalog.contact(3), catalog.distribution_example(4)):
        assert parse_section(format_section(s)) == s


@given(st.data())
def test_form_parse_print_idempotent(data):
    n = data.draw(st.integers(1, 4))
    a = data.draw(forms(n))
    text = a.to_str()
    b = parse_form(text, n)
    assert b == a and b.to_str() == text


@given(homogeneous_polys(n_vars=4, max_degree=3))
def test_poly_round_trip(p):
    assert parse_poly(str(p), 4) == p


@given(homogeneous_polys(n_vars=4, degree=2, allow_zero=False), homogeneous_polys(n_vars=4, degree=2, allow_zero=False))
def test_section_round_trip(p, q):
    w = catalog.pencil_form(p, q)
    if w.is_zero():
        return
    s = make_section(w, 3)
    assert parse_section(format_section(s)) == s
