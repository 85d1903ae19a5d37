"""Seeded test-instance generators; every output is in general position."""

from __future__ import annotations

import math
import random

from .families import NonCrossingFamily, verify_noncrossing_family
from .geometry import PointSet, convex_position, in_general_position
from .spokes import build_prop7

MAX_RESAMPLES = 1000


def _accept(make, rng: random.Random, check=in_general_position) -> PointSet:
    for _ in range(MAX_RESAMPLES):
        P = make(rng)
        if len(set(P.points)) == len(P) and check(P):
            return P.checked()
    raise RuntimeError("could not sample a point set in general position")


def _distinct(P: list[tuple[int, int]]) -> PointSet:
    return PointSet.from_coords(P) if len(set(P)) == len(P) else PointSet.from_coords(sorted(set(P)))


def random_disk(n: int, seed: int, radius: int = 10**6) -> PointSet:
    """n integer points uniform in the disk of the given radius."""
    if n < 0 or radius < 1:
        raise ValueError("need n >= 0 and radius >= 1")

    def make(rng):
        pts: list[tuple[int, int]] = []
        seen = set()
        while len(pts) < n:
            x, y = rng.randint(-radius, radius), rng.randint(-radius, radius)
            if x * x + y * y <= radius * radius and (x, y) not in seen:
                seen.add((x, y))
                pts.append((x, y))
        return PointSet.from_coords(pts)

    return _accept(make, random.Random(seed))


def convex(n: int, seed: int, radius: int = 10**6) -> PointSet:
    """n integer points near a circle, accepted only in strict convex position."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def make(rng):
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        return _distinct([(round(radius * math.cos(a)), round(radius * math.sin(a))) for a in angles])

    def ok(P):
        return len(P) == n and in_general_position(P) and convex_position(P)

    return _accept(make, random.Random(seed), ok)


def grid_perturbed(n: int, seed: int, spacing: int = 1000, jitter: int = 100) -> PointSet:
    """First n nodes of a square grid, each moved by a random integer offset."""
    if n < 0:
        raise ValueError("n must be >= 0")
    side = max(1, math.isqrt(max(n - 1, 0)) + 1)

    def make(rng):
        pts = []
        for t in range(n):
            gx, gy = divmod(t, side)
            pts.append((gx * spacing + rng.randint(-jitter, jitter), gy * spacing + rng.randint(-jitter, jitter)))
        return _distinct(pts)

    return _accept(make, random.Random(seed), lambda P: len(P) == n and in_general_position(P))


def four_cluster(m: int, seed: int, scale: int = 10**6, spread: int = 1000) -> tuple[PointSet, list[list[int]]]:
    """Three m-point clusters at the corners of a large triangle and one near
    its centroid: a non-crossing family of size m. Returns the points and the
    four id lists (the interior cluster last)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    centres = [(0, 0), (scale, 0), (scale // 2, scale), (scale // 2, scale // 3)]

    def make(rng):
        pts = []
        for cx, cy in centres:
            for _ in range(m):
                pts.append((cx + rng.randint(-spread, spread), cy + rng.randint(-spread, spread)))
        return _distinct(pts)

    def ok(P):
        if len(P) != 4 * m or not in_general_position(P):
            return False
        N = NonCrossingFamily(*(P.subset(range(c * m, (c + 1) * m)) for c in range(4)))
        return verify_noncrossing_family(N)

    P = _accept(make, random.Random(seed), ok)
    return P, [list(range(c * m, (c + 1) * m)) for c in range(4)]


def prop7_points(k: int, snap: int = 1000) -> PointSet:
    return build_prop7(k, snap).P
