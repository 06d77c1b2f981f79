"""Lower-convex polygons in the plane (Newton and Hodge polygons)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Point = tuple[Fraction, Fraction]


def _frac_point(pt) -> Point:
    return Fraction(pt[0]), Fraction(pt[1])


@dataclass(frozen=True)
class Polygon:
    """Breakpoints of a lower-convex polygon starting at the origin.

    Consecutive breakpoints have strictly increasing x and the slopes of the
    sides never decrease.  Collinear interior points are removed.
    """

    breakpoints: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = [_frac_point(p) for p in self.breakpoints]
        if not pts or pts[0] != (0, 0):
            raise ValueError("polygon must start at (0, 0)")
        for a, b in zip(pts, pts[1:]):
            if b[0] <= a[0]:
                raise ValueError("breakpoint x-coordinates must strictly increase")
        slopes = [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(pts, pts[1:])]
        if any(s2 < s1 for s1, s2 in zip(slopes, slopes[1:])):
            raise ValueError("polygon is not lower convex")
        # drop collinear interior breakpoints
        keep = [pts[0]]
        for i in range(1, len(pts) - 1):
            if slopes[i - 1] != slopes[i]:
                keep.append(pts[i])
        if len(pts) > 1:
            keep.append(pts[-1])
        object.__setattr__(self, "breakpoints", tuple(keep))

    @classmethod
    def from_sides(cls, sides: Iterable[tuple[Fraction, int]]) -> "Polygon":
        """Build from (slope, horizontal length) pairs; zero lengths ignored."""
        pts = [(Fraction(0), Fraction(0))]
        for slope, length in sorted((Fraction(s), l) for s, l in sides):
            if length < 0:
                raise ValueError("side lengths must be non-negative")
            if length:
                x, y = pts[-1]
                pts.append((x + length, y + slope * length))
        return cls(tuple(pts))

    @property
    def width(self) -> Fraction:
        return self.breakpoints[-1][0]

    @property
    def endpoint(self) -> Point:
        return self.breakpoints[-1]

    def sides(self) -> list[tuple[Fraction, Fraction]]:
        pts = self.breakpoints
        return [((b[1] - a[1]) / (b[0] - a[0]), b[0] - a[0]) for a, b in zip(pts, pts[1:])]

    def slope_multiset(self) -> dict[Fraction, int]:
        out: dict[Fraction, int] = {}
        for s, length in self.sides():
            if length.denominator != 1:
                raise ValueError("side length is not integral")
            out[s] = out.get(s, 0) + int(length)
        return out

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        pts = self.breakpoints
        if x < 0 or x > self.width:
            raise ValueError(f"x={x} outside [0, {self.width}]")
        for a, b in zip(pts, pts[1:]):
            if x <= b[0]:
                return a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0])
        return pts[-1][1]

    def is_lower_convex(self) -> bool:
        s = [sl for sl, _ in self.sides()]
        return all(b >= a for a, b in zip(s, s[1:]))

    def as_lists(self) -> list[list[str]]:
        return [[_fmt(x), _fmt(y)] for x, y in self.breakpoints]


def _fmt(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def lower_hull(points: Sequence[tuple]) -> list[Point]:
    """Lower convex hull of finitely many points, left to right."""
    pts = sorted({_frac_point(p) for p in points})
    hull: list[Point] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop hull[-1] if it lies on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        if hull and hull[-1][0] == pt[0]:
            continue  # same x, larger y: never on the lower hull
        hull.append(pt)
    return hull


def polygon_from_multiset(slopes: Mapping[Fraction, int]) -> Polygon:
    return Polygon.from_sides(slopes.items())
