import pytest

from topolines.arrangement import (
    InvalidArrangement,
    PairClass,
    alternates,
    build_arrangement,
    classify_pair,
    flats_on_line,
    is_affine,
)
from topolines.model import Dir, Point, Topoline

from conftest import arrangement, gminus, gplus, straight, x_axis, y_axis


def test_noproj2_points_and_pairs(noproj2):
    locs = [p.location for p in noproj2.points]
    assert locs == [Point.of(-1, 1), Point.of(0, 1), Point.of(1, 0), Point.of(1, 1)]
    assert all(len(p.lines) == 2 for p in noproj2.points)
    classes = list(noproj2.pair_table.values())
    assert classes.count(PairClass.DISJOINT) == 2
    assert classes.count(PairClass.CROSSING) == 4
    assert PairClass.TOUCHING not in classes
    assert is_affine(noproj2)


def test_zigzag_is_rejected_with_witnesses():
    zig = Topoline("z", (-1, 0), [(0, -1), (1, 1), (2, -1)], (1, 0))
    with pytest.raises(InvalidArrangement) as err:
        build_arrangement([x_axis(), zig])
    assert err.value.pair == ("x", "z")
    assert err.value.witnesses == (Point.of("1/2", 0), Point.of("3/2", 0))


def test_overlap_and_duplicate_ids_are_rejected():
    with pytest.raises(InvalidArrangement):
        build_arrangement([x_axis("a"), Topoline("b", (0, 1), [(0, 0)], (1, 0))])
    with pytest.raises(InvalidArrangement):
        build_arrangement([x_axis("a"), y_axis("a")])


def test_invalid_curve_is_rejected():
    bad = Topoline("d", (-1, 0), [(0, 0), (1, 0), (0, 0)], (1, 1))
    with pytest.raises(InvalidArrangement):
        build_arrangement([bad])


def test_classify_pairs():
    arr = arrangement(
        straight("x", (0, -3), (1, 0)),
        straight("y", (-3, 0), (0, 1)),
        gplus(),
        gminus(),
        straight("far", (0, 5), (1, 0)),
    )
    assert classify_pair(arr, "x", "y") is PairClass.CROSSING
    assert classify_pair(arr, "Gplus", "Gminus") is PairClass.TOUCHING
    assert classify_pair(arr, "x", "far") is PairClass.DISJOINT
    assert classify_pair(arr, "far", "x") is PairClass.DISJOINT
    with pytest.raises(ValueError):
        classify_pair(arr, "x", "x")
    with pytest.raises(KeyError):
        classify_pair(arr, "x", "nope")


def test_branch_cycle_at_touching_point(gpm):
    (p,) = gpm.points
    dirs = [b.outgoing_dir for b in p.branch_cycle]
    assert dirs == [Dir(1, 0), Dir(0, 1), Dir(-1, 0), Dir(0, -1)]
    assert not alternates(p.branch_cycle, "Gplus", "Gminus")


def test_affine_checks(gpm):
    assert not is_affine(gpm)
    assert is_affine(arrangement())
    assert is_affine(arrangement(x_axis()))


def test_flats_on_line(noproj2):
    on = [p.location for p in flats_on_line(noproj2, "y1")]
    assert on == [Point.of(-1, 1), Point.of(0, 1), Point.of(1, 1)]
    assert flats_on_line(noproj2, "xm1")[0].location == Point.of(-1, 1)


def test_flats_on_bent_line_follow_the_curve():
    t = Topoline("t", (-1, 0), [(0, 0), (2, 2)], (1, 0))
    arr = arrangement(t, straight("v", (1, 0), (0, 1)), straight("w", (5, 0), (0, 1)))
    assert [p.location for p in flats_on_line(arr, "t")] == [Point.of(1, 1), Point.of(5, 2)]


def test_triple_point():
    arr = arrangement(x_axis(), y_axis(), straight("d", (0, 0), (1, 1)))
    (p,) = arr.points
    assert p.lines == frozenset({"x", "y", "d"}) and len(p.branch_cycle) == 6
    assert set(arr.pair_table.values()) == {PairClass.CROSSING}
