from fractions import Fraction

import pytest

from topolines.model import (
    Box,
    Dir,
    Point,
    Topoline,
    canonical_union,
    clip_piece,
    curve_intersection,
    curve_param,
    join_halves,
    point_on_curve,
    pseudo_angle,
    rat,
    same_point_set,
    side_of_curve,
    simplify,
    split_at,
    validate_topoline,
)

from conftest import gplus, straight, x_axis, y_axis

ZIGZAG = Topoline("z", (-1, 0), [(0, -1), (1, 1), (2, -1)], (1, 0))


def test_rat_rejects_floats():
    assert rat("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        rat(0.5)


def test_dir_is_normalised_and_oriented():
    assert Dir.of(2, 4) == Dir(1, 2)
    assert Dir.of(-2, -4) == Dir(-1, -2)
    assert Dir.of("1/2", "1/3") == Dir(3, 2)
    assert -Dir(1, 2) == Dir(-1, -2)
    with pytest.raises(ValueError):
        Dir.of(0, 0)


def test_pseudo_angle_is_monotone():
    dirs = [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    angles = [pseudo_angle(d) for d in dirs]
    assert angles == sorted(angles)
    assert angles[0] == 0 and all(0 <= a < 4 for a in angles)


class TestValidate:
    def test_straight_line(self):
        assert validate_topoline(x_axis()) is None

    def test_bent_line(self):
        assert validate_topoline(gplus()) is None

    def test_doubling_back(self):
        t = Topoline("d", (-1, 0), [(0, 0), (1, 0), (0, 0)], (1, 1))
        bad = validate_topoline(t)
        assert bad is not None and bad.line_id == "d"

    def test_zero_length_segment(self):
        t = Topoline("d", (-1, 0), [(0, 0), (0, 0)], (1, 1))
        assert "zero-length" in validate_topoline(t).message

    def test_ray_folding_onto_segment(self):
        t = Topoline("d", (1, 0), [(0, 0), (2, 0)], (0, 1))
        assert validate_topoline(t) is not None

    def test_self_touching(self):
        t = Topoline("d", (-1, 0), [(0, 0), (2, 0), (2, 2), (1, 2), (1, -1)], (0, -1))
        bad = validate_topoline(t)
        assert bad is not None and "touches itself" in bad.message


class TestIntersection:
    def test_axes(self):
        cut = curve_intersection(x_axis(), y_axis())
        assert cut.points == (Point.of(0, 0),) and not cut.overlap

    def test_parallel_to_bent_line_is_empty(self):
        assert curve_intersection(straight("m", (-1, 0), (0, 1)), gplus()).empty

    def test_zigzag_two_points(self):
        cut = curve_intersection(x_axis(), ZIGZAG)
        assert cut.points == (Point.of("1/2", 0), Point.of("3/2", 0))

    def test_overlap_flag(self):
        a = Topoline("a", (-1, 0), [(0, 0)], (0, 1))
        assert curve_intersection(x_axis(), a).overlap

    def test_touching_endpoint_only(self):
        a = Topoline("a", (1, 1), [(0, 0)], (-1, 1))
        assert curve_intersection(x_axis(), a).points == (Point.of(0, 0),)


def test_point_on_curve():
    assert point_on_curve(x_axis(), (5, 0))
    assert not point_on_curve(x_axis(), (5, 1))
    assert point_on_curve(gplus(), (0, 3))
    assert not point_on_curve(gplus(), (-1, 0))


def test_curve_param_orders_along_the_curve():
    pts = [Point.of(-3, -1), Point.of(0, -1), Point.of("1/2", 0), Point.of(2, -1), Point.of(9, -1)]
    keys = [curve_param(ZIGZAG, p) for p in pts]
    assert keys == sorted(keys)


def test_split_and_join_round_trip():
    minus, plus = split_at(ZIGZAG, Point.of("1/2", 0))
    assert minus.outgoing == Dir(-1, -2) and plus.outgoing == Dir(1, 2)
    again = join_halves("z", minus, plus)
    assert same_point_set(again, ZIGZAG)


def test_simplify_drops_straight_vertices():
    t = Topoline("s", (-1, 0), [(0, 0), (1, 0), (2, 0)], (1, 0))
    s = simplify(t)
    assert len(s.vertices) == 1 and same_point_set(s, x_axis("s"))


def test_side_of_curve():
    assert side_of_curve(x_axis(), (0, 1)) == 1
    assert side_of_curve(x_axis(), (0, -1)) == -1
    assert side_of_curve(x_axis(), (4, 0)) == 0
    # walking Gplus from its start (the +x ray) to its end (the +y ray)
    assert side_of_curve(gplus(), (1, 1)) == -1
    assert side_of_curve(gplus(), (-1, -1)) == 1


def test_clip_piece_and_union():
    box = Box.square((0, 0), 2)
    ray = x_axis().pieces[1]
    seg = clip_piece(ray, box)
    assert seg.origin == Point.of(0, 0) and seg.end == Point.of(2, 0)
    assert clip_piece(straight("far", (0, 5), (1, 0)).pieces[0], box) is None
    halves = [Topoline("a", (-1, 0), [(0, 0)], (0, 1)), Topoline("b", (1, 0), [(0, 0)], (0, -1))]
    axes = [x_axis(), y_axis()]
    assert canonical_union(p for t in halves for p in t.pieces) == canonical_union(
        p for t in axes for p in t.pieces
    )


def test_box_perimeter_walk():
    box = Box(0, 0, 2, 1)
    assert box.perimeter == 6
    assert box.perimeter_param(Point.of(2, "1/2")) == Fraction(5, 2)
    path = box.ccw_path(Point.of(1, 0), Point.of(1, 1))
    assert path == [Point.of(1, 0), Point.of(2, 0), Point.of(2, 1), Point.of(1, 1)]
    assert box.ray_exit(Point.of(1, "1/2"), Dir(1, 1)) == Point.of("3/2", 1)
