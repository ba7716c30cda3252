"""Acceptance criteria 1-13.

Each test replays one registered check and prints a single PASS/FAIL line
(run with ``-s`` to see them; they also appear in the -v log via the test
ids).  A few headline values are asserted again here directly against the
engine so a regression in the registry cannot hide them.
"""
import pytest

from iwasawa.checks import run_checks, REGISTRY
from iwasawa.cohomology import hodge_numbers, betti_numbers, bott_chern, aeppli
from iwasawa import mirror as mi

_CACHE = {}


def _result(cid):
    if cid not in _CACHE:
        _CACHE[cid] = run_checks([cid])[0]
    return _CACHE[cid]


@pytest.mark.parametrize("cid", sorted(REGISTRY))
def test_criterion(cid):
    r = _result(cid)
    print(f"\ncriterion {cid:2d} [{'PASS' if r.passed else 'FAIL'}] {r.title}"
          + ("" if r.passed else f" -- {r.witness}"))
    assert r.passed, r.witness


def test_headline_cohomology_t0():
    h = hodge_numbers()
    assert (h[1, 0], h[0, 1], h[1, 1], h[2, 1], h[1, 2], h[3, 0], h[0, 3]) == (3, 2, 6, 6, 6, 1, 1)
    assert betti_numbers()[1:6] == [4, 8, 10, 8, 4]
    assert aeppli(2, 2).dimension == 4 and bott_chern(1, 1).dimension == 4


def test_headline_signatures():
    assert ["".join(mi.space_signature(n).signature) for n in ("h21gamma", "f2", "h11B")] \
        == ["-+++", "--+++", "++---"]


def test_criterion9_parts_that_hold():
    # the sigma closed forms and the anti-holomorphic half of the partials claim hold
    r = _result(9)
    ok = {label: good for label, good, _ in r.lines}
    failing = sorted(label for label, good in ok.items() if not good)
    assert len(failing) == 2, failing


@pytest.mark.xfail(strict=True, reason="holomorphic first partials of sigma_{i j~} at 0 are "
                   "nonzero; only the anti-holomorphic ones vanish")
def test_sigma22b_all_twelve_partials_vanish():
    from iwasawa.deformation import build_structure_jet, sigma_from_frame
    from iwasawa.scalars import T_VARS, S_VARS, ZERO
    s = sigma_from_frame(build_structure_jet())
    assert all(s.s22b.partial(v) == ZERO for v in T_VARS + S_VARS)
