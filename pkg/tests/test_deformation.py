import pytest
from hypothesis import given

from iwasawa.deformation import (build_structure, build_structure_jet, sigma_from_frame,
                                 sigma_appendix, nakamura_class, gamma_forms, FrameSingular,
                                 WrongClass, CLASS_II, CLASS_III, PARALLELISABLE)
from iwasawa.exterior import Form, d, wedge, AL, BE, GA
from iwasawa.scalars import ParamPoint, ONE, ZERO
from iwasawa.sampling import sample_points
from strategies import small

CLASS2 = sample_points(7, 4, kind="class2")


def test_frame_at_zero_is_identity():
    J = build_structure()
    assert J.frame == [[ONE if i == j else ZERO for j in range(6)] for i in range(6)]
    assert J.integrable


@given(small, small, small, small)
def test_structure_equations_and_integrability(a, b, c, e):
    t = ParamPoint(t11=a, t12=b, t21=c, t22=e)
    J = build_structure(t)
    assert J.integrable
    # d(phi1) = d(phi2) = 0 for the first two frame forms
    assert d(J.phi(0)) == Form() and d(J.phi(1)) == Form()


def test_classes():
    assert nakamura_class(ParamPoint()) == PARALLELISABLE
    assert nakamura_class(ParamPoint.parse("t11=1/4,t12=1/4,t21=1/4,t22=1/4")) == CLASS_II
    assert nakamura_class(ParamPoint.parse("t11=1/4,t22=1/4")) == CLASS_III


@pytest.mark.parametrize("t", CLASS2, ids=str)
def test_sigma_closed_forms_class2(t):
    assert sigma_appendix(t) == sigma_from_frame(build_structure(t))


def test_sigma_closed_forms_refuse_class3():
    with pytest.raises(WrongClass):
        sigma_appendix(ParamPoint.parse("t11=1/4,t22=1/4"))


def test_sigma_at_zero():
    s = sigma_from_frame(build_structure())
    assert s.s12 == -ONE
    assert not any((s.s11b, s.s12b, s.s21b, s.s22b))


def test_frame_singular():
    with pytest.raises(FrameSingular):
        build_structure(ParamPoint.parse("t11=1"))


def test_jet_structure_value_matches_point():
    J = build_structure_jet()
    s = sigma_from_frame(J)
    assert s.s12.v == -ONE


def test_anti_holomorphic_gamma_derivatives_at_zero():
    G = gamma_forms(build_structure_jet())
    abg = wedge(AL, BE, GA)
    d1 = G[0].map_coeffs(lambda c: c.partial("s12"))
    assert d1 == -abg
