import pytest

from iwasawa import mirror as mi
from iwasawa.hodge import NotPositive
from iwasawa.sampling import sample_points
from iwasawa.scalars import ParamPoint, ONE, ZERO, I

PTS = sample_points(3, 4)


@pytest.mark.parametrize("name,sig", [("h21gamma", "-+++"), ("f2", "--+++"), ("h11B", "++---")])
def test_signatures(name, sig):
    assert "".join(mi.space_signature(name).signature) == sig


def test_star_split_five_five():
    plus, minus = mi.star_split()
    assert len(plus) == len(minus) == 5
    for u in minus:
        assert mi.star_eigenvalue(u) == -I


def test_symplectic_default_and_from_eta0():
    assert mi.symplectic_complete().relations_hold()
    eta0 = mi.default_etas()[0]
    assert mi.symplectic_complete(eta0=eta0).relations_hold()


def test_z_at_zero_and_closed_forms():
    assert mi.coordinates_z() == [ONE, ZERO, ZERO, ZERO]
    for t in PTS:
        assert mi.coordinates_z(t) == mi.coordinates_z_closed(t)


def test_z_scale_invariant():
    t = PTS[0]
    assert mi.coordinates_z(t, scale=lambda p: 1 + p["t11"]) == mi.coordinates_z(t)


def test_w_degenerate_jacobian():
    # eta_{3,B} and eta_{4,B} are proportional, so w only sees three directions
    from iwasawa import linalg
    assert mi.coordinates_w() == [ONE, ZERO, ZERO, ZERO]
    assert linalg.rank(mi.coordinates_w_jacobian()) == 3


def test_potential_symmetry_at_zero():
    r = mi.potential_symmetry_check()
    assert r["symmetric"] and r["z_holomorphic"]


def test_mirror_maps():
    assert mi.mirror_map_positive().coeffs == [ONE * 2, ONE * 2, ZERO, ZERO]
    assert mi.mirror_map_complexified().coeffs == mi.omega0_squared_coords()
    for t in PTS:
        assert mi.mirror_map_positive(t).coeffs == mi.mirror_formula(t)
    with pytest.raises(NotPositive):
        mi.mirror_map_positive(ParamPoint.parse("t11=1"))


def test_dM0_table_convention():
    r = mi.dM0_check()
    assert r["table_agrees"]
    # the contraction convention gives the global negative
    assert not r["contraction_agrees"]
    for row in r["rows"]:
        assert row["A0_contraction"] == [-x for x in row["A0_table"]]


def test_isomorphisms():
    t = PTS[1]
    assert mi.lift_I(t)["P_after_Q_is_id"] and mi.lift_I(t)["closed"]
    assert mi.lift_I(t)["rank"] == 4


def test_vhs_verdicts():
    v = mi.vhs_checks()
    assert all(v[k]["ok"] for k in ("transversality", "f2_holomorphic",
                                    "h12_not_holomorphic", "fg_holomorphic"))


def test_second_iso_first_order_jets():
    out = mi.second_iso_obstruction()
    assert all(c == ZERO for j in out for c in out[j].values())


def test_yukawa_vs_frame_sign():
    th = mi.essential_thetas()
    assert len(th) == 4
