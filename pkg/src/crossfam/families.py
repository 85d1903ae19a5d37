"""Certificate types (crossing/non-crossing families, convex bundles, spoke
sets) and the authoritative verifiers that accept or reject them."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _exact
from .errors import DegenerateInput, InvariantViolation
from .geometry import (
    OrientedLine,
    Point,
    PointSet,
    Segment,
    orientation,
    point_in_triangle,
    segments_cross,
)
from .sametype import SameTypeCertificate, verify_same_type


@dataclass(frozen=True)
class CrossingFamily:
    """Pairwise crossing segments. With ``sides`` set, segment.a is meant to
    lie in sides[0] and segment.b in sides[1]."""

    segments: tuple[Segment, ...]
    sides: tuple[PointSet, PointSet] | None = None

    def __len__(self):
        return len(self.segments)

    @property
    def size(self) -> int:
        return len(self.segments)


@dataclass(frozen=True)
class NonCrossingFamily:
    P1: PointSet
    P2: PointSet
    P3: PointSet
    P4: PointSet  # the interior class

    @property
    def parts(self) -> tuple[PointSet, PointSet, PointSet, PointSet]:
        return (self.P1, self.P2, self.P3, self.P4)

    @property
    def size(self) -> int:
        return min(len(p) for p in self.parts)


@dataclass(frozen=True)
class ConvexBundle:
    parts: tuple[PointSet, ...]
    cert: SameTypeCertificate

    @property
    def size(self) -> int:
        return len(self.parts)

    @property
    def width(self) -> int:
        return min(len(p) for p in self.parts)


@dataclass(frozen=True)
class SpokeSet:
    lines: tuple[OrientedLine, ...]

    def __len__(self):
        return len(self.lines)


def verify_crossing_family(F: CrossingFamily, P: PointSet) -> bool:
    ends = [e for s in F.segments for e in (s.a, s.b)]
    if any(e not in P for e in ends) or len(set(ends)) != len(ends):
        return False
    if F.sides is not None:
        left, right = (set(side.points) for side in F.sides)
        for s in F.segments:
            if not ((s.a in left and s.b in right) or (s.a in right and s.b in left)):
                return False
    return all(segments_cross(s, t) for s, t in itertools.combinations(F.segments, 2))


def failed_crossing_pairs(F: CrossingFamily) -> list[tuple[int, int]]:
    return [
        (i, j)
        for (i, s), (j, t) in itertools.combinations(enumerate(F.segments), 2)
        if not segments_cross(s, t)
    ]


def _parts_disjoint(parts: Sequence[PointSet]) -> bool:
    pts = [p for part in parts for p in part.points]
    return len(set(pts)) == len(pts)


def noncrossing_violations(N: NonCrossingFamily, limit: int | None = None) -> list[tuple[Point, ...]]:
    out = []
    for p1, p2, p3, p4 in itertools.product(*(part.points for part in N.parts)):
        if orientation(p1, p2, p3) == 0 or not point_in_triangle(p4, p1, p2, p3):
            out.append((p1, p2, p3, p4))
            if limit is not None and len(out) >= limit:
                break
    return out


def verify_noncrossing_family(N: NonCrossingFamily) -> bool:
    """Every quadruple of P1 x P2 x P3 x P4 has its P4 point strictly inside."""
    if any(len(p) == 0 for p in N.parts) or not _parts_disjoint(N.parts):
        return False
    return not noncrossing_violations(N, limit=1)


def fast_noncrossing_check(N: NonCrossingFamily) -> bool:
    """Same-type plus one good representative quadruple.

    Sufficient for a non-crossing family, and in general position also
    necessary: if p4 lies inside p1p2p3 for every choice, each triple sign
    equals that of (p1, p2, p3), which therefore cannot change.
    """
    if any(len(p) == 0 for p in N.parts) or not _parts_disjoint(N.parts):
        return False
    if verify_same_type(list(N.parts)) is None:
        return False
    p1, p2, p3, p4 = (part.points[0] for part in N.parts)
    if orientation(p1, p2, p3) == 0:
        return False
    return point_in_triangle(p4, p1, p2, p3)


def _tuple_convex_in_order(pts: Sequence[Point]) -> bool:
    """Points form a convex polygon when visited in the given cyclic order."""
    k = len(pts)
    if k <= 2:
        return True
    signs = {orientation(a, b, c) for a, b, c in itertools.combinations(pts, 3)}
    return len(signs) == 1 and 0 not in signs


def _brute_force_bundle(parts: Sequence[PointSet], chunk: int = 1 << 15) -> bool:
    """Enumerate every choice tuple; each must be a convex polygon in the stored
    order (all cyclic turns equal and a monotone fan from the first vertex)."""
    k = len(parts)
    if k <= 3:
        return True
    pts, offs = [], []
    for part in parts:
        offs.append(len(pts))
        pts.extend(part.points)
    coords = _exact.scaled_coords(pts)
    sizes = [len(p) for p in parts]
    total = int(np.prod(sizes))
    for start in range(0, total, chunk):
        flat = np.arange(start, min(total, start + chunk))
        idx = np.empty((len(flat), k), dtype=np.intp)
        rem = flat.copy()
        for j in range(k - 1, -1, -1):
            idx[:, j] = rem % sizes[j] + offs[j]
            rem //= sizes[j]
        c = coords[idx]  # (N, k, 2)
        turns = _exact.orient(c, np.roll(c, -1, axis=1), np.roll(c, -2, axis=1))
        fan = _exact.orient(c[:, :1, :], c[:, 1:-1, :], c[:, 2:, :])
        ref = turns[:, :1]
        if np.any(ref == 0) or np.any(turns != ref) or np.any(fan != ref):
            return False
    return True


def verify_convex_bundle(B: ConvexBundle, brute_force_limit: int = 10**6) -> bool:
    """Certificate + one representative tuple, backed by full enumeration
    whenever the number of choice tuples is at most ``brute_force_limit``."""
    parts = list(B.parts)
    if any(len(p) == 0 for p in parts) or not _parts_disjoint(parts):
        return False
    cert = verify_same_type(parts)
    if cert is None or cert.signature != B.cert.signature:
        return False
    reps = [p.points[0] for p in parts]
    if not _tuple_convex_in_order(reps):
        return False
    total = 1
    for p in parts:
        total *= len(p)
    if total <= brute_force_limit:
        return _brute_force_bundle(parts)
    return True


def bundle_to_crossing_family(B: ConvexBundle) -> CrossingFamily:
    """Join the representative of part i to that of part i + k (size 2k)."""
    if B.size % 2:
        raise ValueError("bundle size must be even")
    k = B.size // 2
    reps = [min(zip(p.ids, p.points))[1] for p in B.parts]
    return CrossingFamily(tuple(Segment(reps[i], reps[i + k]) for i in range(k)))


def _angle_key(u, v) -> int:
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cr = u[0] * v[1] - u[1] * v[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def unbounded_cell_signs(L: SpokeSet) -> list[tuple[int, ...]]:
    """Sign vectors of the 2|L| unbounded cells, in angular order.

    Between consecutive line directions a and b (angle < pi) the direction
    a + b points into exactly one unbounded cell; far along it, the side of
    each line is sign(cross(line direction, a + b)).
    """
    dirs = [ln.direction for ln in L.lines]
    for (i, u), (j, v) in itertools.combinations(enumerate(dirs), 2):
        if u[0] * v[1] - u[1] * v[0] == 0:
            raise DegenerateInput(f"lines {i} and {j} are parallel")
    rays = dirs + [(-dx, -dy) for dx, dy in dirs]
    rays.sort(key=functools.cmp_to_key(_angle_key))
    cells = []
    for a, b in zip(rays, rays[1:] + rays[:1]):
        if a[0] * b[1] - a[1] * b[0] > 0:
            w = (a[0] + b[0], a[1] + b[1])
        else:  # single line: the two rays are opposite
            w = (-a[1], a[0])
        sig = []
        for u in dirs:
            cr = u[0] * w[1] - u[1] * w[0]
            sig.append(1 if cr > 0 else -1)
        cells.append(tuple(sig))
    return cells


def verify_spoke_set(L: SpokeSet, P: PointSet) -> bool:
    """Every unbounded cell of the arrangement holds a point of P.

    A sign vector pins down at most one (convex) cell, so a point whose side
    signs equal an unbounded cell's signs certifiably lies in that cell.
    Points on a line have a zero sign and sit in no cell.
    """
    if not L.lines:
        return False
    cells = unbounded_cell_signs(L)
    occupied = {tuple(ln.side(p) for ln in L.lines) for p in P.points}
    return all(c in occupied for c in cells)


def spoke_set_from_crossing_family(F: CrossingFamily, P: PointSet) -> SpokeSet:
    """Spoke set of size |F| from a crossing family.

    Segment endpoints lie on their own supporting lines, so each line is turned
    slightly counterclockwise about its segment midpoint; both endpoints then
    drop into the unbounded cell clockwise of their ray.
    """
    t = Fraction(1, 8)
    for _ in range(64):
        lines = []
        for s in F.segments:
            mx, my = (s.a.x + s.b.x) / 2, (s.a.y + s.b.y) / 2
            dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
            rx, ry = dx - t * dy, dy + t * dx
            lines.append(OrientedLine(Point(mx, my), Point(mx + rx, my + ry)))
        L = SpokeSet(tuple(lines))
        if verify_spoke_set(L, P):
            return L
        t /= 2
    raise InvariantViolation("could not realize the spoke set of a crossing family")
