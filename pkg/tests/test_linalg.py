from hypothesis import given, strategies as st

from iwasawa import linalg
from iwasawa.scalars import ONE, ZERO
from strategies import gscalars

mats = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(gscalars, min_size=n, max_size=n), min_size=m, max_size=m)))


@given(mats)
def test_rank_nullity(a):
    n = len(a[0])
    ns = linalg.nullspace(a)
    assert linalg.rank(a) + len(ns) == n
    for v in ns:
        assert all(x == ZERO for x in linalg.matvec(a, v))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(gscalars, min_size=n, max_size=n),
                                                  min_size=n, max_size=n)))
def test_inverse_det(a):
    n = len(a)
    if linalg.det(a):
        assert linalg.matmul(a, linalg.inverse(a)) == linalg.identity(n)
    else:
        assert linalg.rank(a) < n


def test_solve_and_span():
    a = [[ONE, ONE], [ZERO, ONE]]
    x = linalg.solve(a, [ONE * 3, ONE])
    assert x == [ONE * 2, ONE]
    assert linalg.in_span([[ONE, ZERO]], [ONE * 5, ZERO])
    assert not linalg.in_span([[ONE, ZERO]], [ZERO, ONE])
