from fractions import Fraction

import pytest
from hypothesis import given

from iwasawa.scalars import (GScalar, MultiPoly, RatFunc, Jet1, ParamPoint, ParseError,
                             parse_scalar, poly_eval, ONE, ZERO, I)
from strategies import gscalars


@given(gscalars, gscalars, gscalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(gscalars)
def test_inverse_and_conj(a):
    if a:
        assert a * a.inverse() == ONE
    assert a.conj().conj() == a
    assert (a * a.conj()).is_real()
    assert (a * a.conj()).re == a.norm2()


@given(gscalars)
def test_literal_roundtrip(a):
    assert parse_scalar(a.to_literal()) == a


@pytest.mark.parametrize("text,val", [
    ("1/2", GScalar(Fraction(1, 2))), ("-i", GScalar(0, -1)), ("i", I),
    ("1/2-3/4i", GScalar(Fraction(1, 2), Fraction(-3, 4))), ("(2+i)", GScalar(2, 1)),
])
def test_parse_examples(text, val):
    assert parse_scalar(text) == val


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1+2", "i2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_i_squared():
    assert I * I == -ONE


def test_multipoly_partial_and_conj():
    t, s = MultiPoly.var("t11"), MultiPoly.var("s11")
    p = t * t * s + 3
    assert p.partial("t11") == 2 * t * s
    assert p.partial("s11") == t * t
    assert p.conj() == s * s * t + 3
    assert poly_eval(p, ParamPoint(t11=GScalar(0, 1))) == GScalar(3, 1)   # i*i*(-i) + 3


def test_ratfunc_arith():
    t = RatFunc(MultiPoly.var("t11"))
    f = 1 / (1 + t)
    assert f * (1 + t) == RatFunc(MultiPoly.const(ONE))


@given(gscalars, gscalars)
def test_jet_product_rule(a, b):
    base = ParamPoint(t11=a)
    x = Jet1.variable("t11", base)
    y = x * x * x
    assert y.partial("t11") == 3 * a * a
    assert y.partial("s11") == ZERO
    if a:
        assert (1 / x).partial("t11") == -(a * a).inverse()


def test_parampoint_parse_and_D():
    p = ParamPoint.parse("t11=1/2, t22=1/3+i")
    assert p["t11"] == GScalar(Fraction(1, 2))
    assert p["s22"] == GScalar(Fraction(1, 3), -1)
    assert p.D == GScalar(Fraction(1, 6), Fraction(1, 2))
    assert ParamPoint.parse("0") == ParamPoint()
    with pytest.raises(ParseError):
        ParamPoint.parse("t11")
    with pytest.raises(ParseError):
        ParamPoint(s11=1)
