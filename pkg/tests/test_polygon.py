from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyslope.polygon import Polygon, lower_hull, polygon_from_multiset


def test_from_sides_and_multiset():
    P = Polygon.from_sides([(0, 1), (1, 1)])
    assert P.breakpoints == ((0, 0), (1, 0), (2, 1))
    assert P.slope_multiset() == {0: 1, 1: 1}
    assert P.as_lists() == [["0/1", "0/1"], ["1/1", "0/1"], ["2/1", "1/1"]]


def test_validation():
    with pytest.raises(ValueError):
        Polygon(((1, 0), (2, 0)))
    with pytest.raises(ValueError):
        Polygon(((0, 0), (1, 2), (2, 2)))


def test_collinear_points_removed():
    P = Polygon(((0, 0), (1, 1), (2, 2)))
    assert P.breakpoints == ((0, 0), (2, 2))
    assert P.slope_multiset() == {1: 2}


def test_interpolation():
    P = Polygon.from_sides([(0, 2), (Fraction(1, 2), 2)])
    assert P(1) == 0
    assert P(3) == Fraction(1, 2)
    assert P(4) == 1


def test_lower_hull():
    pts = [(0, 0), (1, 0), (2, 1), (1, 5), (2, 3)]
    assert lower_hull(pts) == [(0, 0), (1, 0), (2, 1)]


sides = st.lists(st.tuples(st.fractions(min_value=0, max_value=5, max_denominator=6), st.integers(0, 4)), max_size=6)


@given(sides)
def test_polygon_from_multiset_is_convex_with_right_width(s):
    mult: dict = {}
    for slope, m in s:
        mult[slope] = mult.get(slope, 0) + m
    P = polygon_from_multiset(mult)
    assert P.is_lower_convex()
    assert P.width == sum(mult.values())
    assert P.slope_multiset() == {k: v for k, v in mult.items() if v}


@given(st.lists(st.tuples(st.integers(0, 10), st.integers(-10, 10)), min_size=1, max_size=12))
def test_lower_hull_lies_below_points(pts):
    hull = lower_hull(pts)
    xs = [x for x, _ in hull]
    assert xs == sorted(set(xs))
    if hull[0] != (0, 0):
        return
    P = Polygon(tuple(hull))
    assert P.is_lower_convex()
    for x, y in pts:
        if 0 <= x <= P.width:
            assert P(x) <= y
