from iwasawa.sampling import sample_points


def test_reproducible():
    assert sample_points(5, 6) == sample_points(5, 6)
    assert sample_points(5, 6) != sample_points(6, 6)


def test_kinds():
    assert all(not p.D and any(p.t[:4]) for p in sample_points(1, 5, kind="class2"))
    assert all(p.D for p in sample_points(1, 5, kind="class3"))
    assert all(p.is_essential() for p in sample_points(1, 5))
    assert any(not p.is_essential() for p in sample_points(1, 5, slice="full"))


def test_denominators():
    for p in sample_points(2, 10, max_den=4):
        for v in p.t:
            assert v.re.denominator <= 4 and v.im.denominator <= 4
