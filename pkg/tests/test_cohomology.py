import pytest

from iwasawa.cohomology import (de_rham, dolbeault, bott_chern, aeppli, frolicher_page,
                                e2_via_d1, hodge_numbers, betti_numbers, massey_triple,
                                NotACycle, INF_PAGE)
from iwasawa.deformation import build_structure
from iwasawa.exterior import AL, BE, GA, wedge
from iwasawa.sampling import sample_points

PTS = sample_points(11, 2, kind="class2") + sample_points(11, 2, kind="class3")


def test_betti_at_zero():
    assert betti_numbers() == [1, 4, 8, 10, 8, 4, 1]


def test_bc_and_aeppli():
    assert bott_chern(1, 1).dimension == 4
    assert aeppli(2, 2).dimension == 4


@pytest.mark.parametrize("t", PTS, ids=str)
def test_betti_constant_and_serre_symmetry(t):
    J = build_structure(t)
    assert betti_numbers(J) == [1, 4, 8, 10, 8, 4, 1]
    h = hodge_numbers(J)
    assert all(h[p, q] == h[3 - p, 3 - q] for p in range(4) for q in range(4))


@pytest.mark.parametrize("t", [None] + PTS, ids=str)
def test_e2_two_ways_and_sum(t):
    J = build_structure(t) if t is not None else None
    b = betti_numbers(J)
    for k in range(7):
        tot = 0
        for p in range(4):
            q = k - p
            if 0 <= q <= 3:
                e2 = frolicher_page(2, p, q, J).dimension
                assert e2 == e2_via_d1(p, q, J)
                assert e2 == frolicher_page(INF_PAGE, p, q, J).dimension
                tot += e2
        assert tot == b[k]


def test_coords_and_not_a_cycle():
    H = dolbeault(3, 0)
    assert H.coords(wedge(AL, BE, GA)) != [0]
    with pytest.raises(NotACycle):
        de_rham(1).coords(GA)


def test_massey_nonzero():
    assert massey_triple(AL, BE, BE).is_nonzero
