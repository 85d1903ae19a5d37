"""Exact planar primitives: points, orientation, hulls, separation, caps/cups.

Coordinates are :class:`fractions.Fraction`; every predicate is a sign of an
exact determinant. Orientation is +1 for counterclockwise. Where an x-order is
needed, ties in x are broken by y (an infinitesimal shear x + delta*y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _exact
from .errors import DegenerateInput


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def _as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(*p)


@dataclass(frozen=True)
class PointSet:
    """Ordered, duplicate-free point collection with stable integer ids.

    ``general_position`` is only ever True after :func:`in_general_position`
    has confirmed it (see :meth:`checked`).
    """

    points: tuple[Point, ...]
    ids: tuple[int, ...] | None = None
    general_position: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = tuple(_as_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        ids = tuple(range(len(pts))) if self.ids is None else tuple(int(i) for i in self.ids)
        if len(ids) != len(pts):
            raise ValueError("ids and points differ in length")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate point ids")
        if len(set(pts)) != len(pts):
            raise DegenerateInput("duplicate points")
        object.__setattr__(self, "ids", ids)
        if self.general_position:
            object.__setattr__(self, "general_position", False)
            if not in_general_position(self):
                raise DegenerateInput("point set is not in general position")
            object.__setattr__(self, "general_position", True)

    @classmethod
    def from_coords(cls, coords: Iterable, ids: Iterable[int] | None = None) -> "PointSet":
        return cls(tuple(Point(*c) for c in coords), None if ids is None else tuple(ids))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self.index_of

    @cached_property
    def index_of(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def by_id(self) -> dict[int, Point]:
        return dict(zip(self.ids, self.points))

    @cached_property
    def coords(self) -> np.ndarray:
        return _exact.scaled_coords(self.points)

    def checked(self) -> "PointSet":
        """Return this set flagged as in general position, or raise."""
        if self.general_position:
            return self
        if not in_general_position(self):
            raise DegenerateInput("point set is not in general position")
        out = PointSet(self.points, self.ids)
        object.__setattr__(out, "general_position", True)
        return out

    def subset(self, positions: Iterable[int]) -> "PointSet":
        pos = list(positions)
        out = PointSet(tuple(self.points[i] for i in pos), tuple(self.ids[i] for i in pos))
        object.__setattr__(out, "general_position", self.general_position)
        return out

    def select_ids(self, ids: Iterable[int]) -> "PointSet":
        where = {i: t for t, i in enumerate(self.ids)}
        return self.subset(where[i] for i in ids)

    def sorted_by_x(self) -> "PointSet":
        return self.subset(sorted(range(len(self)), key=lambda i: self.points[i]))

    def sorted_by_id(self) -> "PointSet":
        return self.subset(sorted(range(len(self)), key=lambda i: self.ids[i]))

    def map_points(self, fn) -> "PointSet":
        """Apply a coordinate map, keeping ids (callers keep it injective)."""
        return PointSet(tuple(fn(p) for p in self.points), self.ids)

    @staticmethod
    def union(sets: Sequence["PointSet"]) -> "PointSet":
        pts: list[Point] = []
        ids: list[int] = []
        for s in sets:
            pts.extend(s.points)
            ids.extend(s.ids)
        return PointSet(tuple(pts), tuple(ids))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        object.__setattr__(self, "a", _as_point(self.a))
        object.__setattr__(self, "b", _as_point(self.b))
        if self.a == self.b:
            raise DegenerateInput("segment endpoints coincide")


@dataclass(frozen=True)
class OrientedLine:
    """Line through p and q, directed p -> q. ``side`` is +1 on the left."""

    p: Point
    q: Point

    def __post_init__(self):
        object.__setattr__(self, "p", _as_point(self.p))
        object.__setattr__(self, "q", _as_point(self.q))
        if self.p == self.q:
            raise DegenerateInput("line needs two distinct points")

    @property
    def direction(self) -> tuple[Fraction, Fraction]:
        return (self.q.x - self.p.x, self.q.y - self.p.y)

    def side(self, r: Point) -> int:
        return orientation(self.p, self.q, r)


def orientation(p: Point, q: Point, r: Point) -> int:
    det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (det > 0) - (det < 0)


def in_general_position(P: PointSet | Sequence[Point]) -> bool:
    pts = P.points if isinstance(P, PointSet) else tuple(_as_point(p) for p in P)
    if len(set(pts)) != len(pts):
        return False
    coords = P.coords if isinstance(P, PointSet) else _exact.scaled_coords(pts)
    return not _exact.has_collinear_triple(coords)


def segments_cross(s: Segment, t: Segment) -> bool:
    """Proper crossing of the open segments; shared endpoints never cross."""
    if {s.a, s.b} & {t.a, t.b}:
        return False
    o1 = orientation(s.a, s.b, t.a)
    o2 = orientation(s.a, s.b, t.b)
    o3 = orientation(t.a, t.b, s.a)
    o4 = orientation(t.a, t.b, s.b)
    return o1 * o2 < 0 and o3 * o4 < 0


def convex_hull(P: PointSet | Sequence[Point]) -> list[Point]:
    """Counterclockwise hull vertices starting at the lexicographically least point.

    Collinear boundary points are dropped, so the cycle is minimal.
    """
    pts = sorted(set(P.points if isinstance(P, PointSet) else (_as_point(p) for p in P)))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def _require_general_position(pts: Sequence[Point]) -> None:
    if not in_general_position(pts):
        raise DegenerateInput("collinear triple present")


def convex_position(S: Sequence[Point] | PointSet) -> bool:
    pts = list(S.points if isinstance(S, PointSet) else (_as_point(p) for p in S))
    _require_general_position(pts)
    return len(convex_hull(pts)) == len(pts)


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Strict interior test; points on the boundary are outside."""
    o = orientation(a, b, c)
    if o == 0:
        raise DegenerateInput("triangle vertices are collinear")
    return orientation(a, b, p) == o and orientation(b, c, p) == o and orientation(c, a, p) == o


def _check_x_strict(S: Sequence[Point]) -> None:
    for u, v in zip(S, S[1:]):
        if u.x == v.x:
            raise DegenerateInput("duplicate x-coordinates in cap/cup test")
        if u.x > v.x:
            raise ValueError("points must be sorted by increasing x")


def is_cap(S: Sequence[Point]) -> bool:
    S = [_as_point(p) for p in S]
    _check_x_strict(S)
    return all(orientation(a, b, c) < 0 for a, b, c in zip(S, S[1:], S[2:]))


def is_cup(S: Sequence[Point]) -> bool:
    S = [_as_point(p) for p in S]
    _check_x_strict(S)
    return all(orientation(a, b, c) > 0 for a, b, c in zip(S, S[1:], S[2:]))


def _closest_features(hA: list[Point], hB: list[Point]):
    """Closest pair (p in conv A, q in conv B) among vertex/vertex and vertex/edge pairs."""

    def edges(h):
        if len(h) < 2:
            return []
        if len(h) == 2:
            return [(h[0], h[1])]
        return list(zip(h, h[1:] + h[:1]))

    def project(v, e):
        a, b = e
        dx, dy = b.x - a.x, b.y - a.y
        t = ((v.x - a.x) * dx + (v.y - a.y) * dy) / (dx * dx + dy * dy)
        t = min(max(t, Fraction(0)), Fraction(1))
        return Point(a.x + t * dx, a.y + t * dy)

    def d2(u, v):
        return (u.x - v.x) ** 2 + (u.y - v.y) ** 2

    best = None
    for a in hA:
        for b in hB:
            cand = (d2(a, b), a, b)
            if best is None or cand[0] < best[0]:
                best = cand
        for e in edges(hB):
            q = project(a, e)
            if d2(a, q) < best[0]:
                best = (d2(a, q), a, q)
    for b in hB:
        for e in edges(hA):
            p = project(b, e)
            if d2(p, b) < best[0]:
                best = (d2(p, b), p, b)
    return best


def separated(A: PointSet, B: PointSet) -> OrientedLine | None:
    """Witness line with A strictly on its negative side and B on its positive side, or None.

    The line is the perpendicular bisector of the closest pair of the two
    hulls; the closest pair of disjoint polygons always involves a vertex, so
    the candidate is exact and rational.
    """
    if not len(A) or not len(B):
        raise ValueError("separated() needs nonempty sets")
    hA, hB = convex_hull(A), convex_hull(B)
    dist, p, q = _closest_features(hA, hB)
    if dist == 0:
        return None
    nx, ny = q.x - p.x, q.y - p.y
    mid = Point((p.x + q.x) / 2, (p.y + q.y) / 2)
    line = OrientedLine(mid, Point(mid.x + ny, mid.y - nx))
    if all(line.side(a) < 0 for a in hA) and all(line.side(b) > 0 for b in hB):
        return line
    return None


def ham_sandwich(A: PointSet, B: PointSet) -> OrientedLine:
    """Line through one point of A and one of B leaving at most ceil(|X|/2)
    points of X strictly on each side, for X in {A, B}.

    Brute-force sweep over all |A|*|B| candidate lines; among the valid ones
    the most balanced wins, ties broken by (id of a, id of b).
    """
    if not len(A) or not len(B):
        raise ValueError("ham_sandwich needs nonempty sets")
    pts = A.points + B.points
    coords = _exact.scaled_coords(pts)
    na, nb = len(A), len(B)
    ia = sorted(range(na), key=lambda t: A.ids[t])
    ib = sorted(range(nb), key=lambda t: B.ids[t])
    p_idx = [a for a in ia for _ in ib]
    q_idx = [na + b for _ in ia for b in ib]
    sides = _exact.line_sides(coords, p_idx, q_idx, range(na + nb))
    sa, sb = sides[:, :na], sides[:, na:]
    la, ra = (sa > 0).sum(1), (sa < 0).sum(1)
    lb, rb = (sb > 0).sum(1), (sb < 0).sum(1)
    ca, cb = -(-na // 2), -(-nb // 2)
    ok = (la <= ca) & (ra <= ca) & (lb <= cb) & (rb <= cb)
    if not ok.any():
        raise DegenerateInput("no ham-sandwich candidate; input not in general position?")
    imbalance = np.abs(la - ra) + np.abs(lb - rb)
    imbalance = np.where(ok, imbalance, np.iinfo(np.int64).max)
    t = int(np.argmin(imbalance))
    return OrientedLine(pts[p_idx[t]], pts[q_idx[t]])


def vertical_split(P: PointSet, parts: Sequence[int]) -> list[PointSet]:
    """Cut P by vertical lines into consecutive x-blocks of the given sizes."""
    if sum(parts) != len(P) or any(s < 0 for s in parts):
        raise ValueError("part sizes must be nonnegative and sum to |P|")
    ordered = P.sorted_by_x()
    out = []
    start = 0
    for size in parts:
        out.append(ordered.subset(range(start, start + size)))
        start += size
    for left, right in zip(out, out[1:]):
        if len(left) and len(right) and left.points[-1].x == right.points[0].x:
            raise DegenerateInput("duplicate x-coordinate straddles a vertical cut")
    return out


def shear_to_distinct_x(P: PointSet) -> PointSet:
    """Exact shear (x, y) -> (x + t*y, y) making all x distinct, keeping ids.

    Orientation is shear-invariant and lexicographic x-order is preserved, so
    every certificate computed on the sheared copy holds for P itself.
    """
    xs = [p.x for p in P.points]
    if len(set(xs)) == len(xs):
        return P
    ordered = sorted(P.points)
    gaps = [v.x - u.x for u, v in zip(ordered, ordered[1:]) if v.x != u.x]
    span = max(abs(p.y) for p in P.points) * 2 + 1
    base = min(gaps) if gaps else Fraction(1)
    denom = 2
    while True:
        t = base / (span * denom)
        sheared = P.map_points(lambda p: Point(p.x + t * p.y, p.y))
        sx = [p.x for p in sheared.points]
        if len(set(sx)) == len(sx) and sorted(range(len(P)), key=lambda i: sheared.points[i].x) == sorted(
            range(len(P)), key=lambda i: P.points[i]
        ):
            out = sheared
            object.__setattr__(out, "general_position", P.general_position)
            return out
        denom *= 2


def reflect_vertical(P: PointSet) -> PointSet:
    out = P.map_points(lambda p: Point(p.x, -p.y))
    object.__setattr__(out, "general_position", P.general_position)
    return out

