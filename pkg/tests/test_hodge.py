import pytest
from hypothesis import given

from iwasawa.hodge import (Metric, hodge_star, inner, adjoint, metric_predicates, laplacian_kernel,
                           DELBAR, AEPPLI)
from iwasawa.cohomology import dolbeault, aeppli
from iwasawa.exterior import AL, BE, GA, wedge, masks_of_degree, monomial
from iwasawa.scalars import ParamPoint, I
from strategies import homogeneous

M0 = Metric.standard()
M11 = Metric.omega11(ParamPoint.parse("t11=1/8,t22=1/8i"))


@pytest.mark.parametrize("m", [M0, M11], ids=["standard", "omega11"])
@pytest.mark.parametrize("k", range(7))
def test_star_squared(m, k):
    for mask in masks_of_degree(k):
        u = monomial(mask)
        assert hodge_star(hodge_star(u, m), m) == u * ((-1) ** k)


def test_star_on_abg():
    assert hodge_star(wedge(AL, BE, GA), M0) == wedge(AL, BE, GA) * -I


@given(homogeneous(2), homogeneous(3))
def test_adjoint_d(u, v):
    lhs = inner(M0.J.from_frame(M0.J.dga(M0.J.to_frame(u))), v, M0)
    rhs = inner(u, adjoint("d", v, M0), M0)
    assert lhs == rhs


def test_harmonic_dims_match_cohomology():
    for p in range(4):
        for q in range(4):
            assert len(laplacian_kernel(DELBAR, p, q, M0)) == dolbeault(p, q).dimension


def test_predicates_at_zero():
    pr = metric_predicates(M0)
    assert pr["balanced"] and pr["positive"]


def test_not_positive_metric():
    assert not Metric.omega11(ParamPoint.parse("t11=1")).positive()


def test_aeppli_harmonic_dims():
    assert len(laplacian_kernel(AEPPLI, 2, 2, M0)) == aeppli(2, 2).dimension == 4
