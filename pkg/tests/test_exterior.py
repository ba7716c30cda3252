import pytest
from hypothesis import given

from iwasawa.exterior import (Form, wedge, d, conj, integrate, monomial, parse_form, render,
                              masks_of_degree, masks_of_bidegree, AL, BE, GA, ALB, BEB, GAB,
                              to_json, from_json, TOP)
from iwasawa.scalars import I, ParseError
from strategies import forms, homogeneous


def test_structure_equations():
    assert d(AL) == Form() and d(BE) == Form()
    assert d(GA) == -wedge(AL, BE)
    assert d(GAB) == -wedge(ALB, BEB)


@pytest.mark.parametrize("m", range(64))
def test_d_squared_zero(m):
    assert d(d(monomial(m))) == Form()


@given(homogeneous(1), homogeneous(3), homogeneous(2))
def test_graded_commutativity(a, b, c):
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(c, b) == wedge(b, c)


@given(homogeneous(1), homogeneous(2))
def test_leibniz(u, v):
    assert d(wedge(u, v)) == wedge(d(u), v) - wedge(u, d(v))


@given(forms(), forms(), forms())
def test_associative(u, v, w):
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))


@given(forms())
def test_conj_involution_and_d(u):
    assert conj(conj(u)) == u
    assert conj(d(u)) == d(conj(u))


@given(forms())
def test_render_parse_roundtrip(u):
    assert parse_form(render(u)) == u
    assert from_json(to_json(u)) == u


def test_counts():
    assert len(masks_of_degree(3)) == 20
    assert len(masks_of_bidegree(2, 1)) == 9


def test_integral_of_volume():
    top = monomial(TOP)
    assert integrate(top) == -I


def test_parse_error():
    with pytest.raises(ParseError):
        parse_form("al^zz")
