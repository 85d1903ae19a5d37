from __future__ import annotations

import itertools
import random
from hypothesis import strategies as st

from crossfam.geometry import Point, PointSet, in_general_position


def brute_orientation(p, q, r) -> int:
    """Independent orientation: the 3x3 determinant |1 x y| expanded by hand."""
    det = (
        (q[0] * r[1] - r[0] * q[1])
        - (p[0] * r[1] - r[0] * p[1])
        + (p[0] * q[1] - q[0] * p[1])
    )
    return (det > 0) - (det < 0)


def brute_hull_vertices(pts) -> set:
    """Hull vertices by exclusion: p is a vertex iff it lies in no closed
    triangle of other points and strictly inside no segment between two others."""
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        inside = False
        for a, b, c in itertools.combinations(others, 3):
            o = [brute_orientation(a, b, p), brute_orientation(b, c, p), brute_orientation(c, a, p)]
            if brute_orientation(a, b, c) != 0 and (all(s >= 0 for s in o) or all(s <= 0 for s in o)):
                inside = True
                break
        if not inside:
            for a, b in itertools.combinations(others, 2):
                if brute_orientation(a, b, p) == 0 and min(a, b) < p < max(a, b):
                    inside = True
                    break
        if not inside:
            out.add(p)
    return out


def random_gp(n: int, rng: random.Random, span: int = 10**4) -> PointSet:
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(-span, span), rng.randint(-span, span)))
        coords = sorted(pts)
        rng.shuffle(coords)
        P = PointSet.from_coords(coords)
        if in_general_position(P):
            return P


def general_position_sets(min_size=3, max_size=9, span=50):
    """Hypothesis strategy for point sets in general position."""
    coords = st.tuples(st.integers(-span, span), st.integers(-span, span))
    return (
        st.lists(coords, min_size=min_size, max_size=max_size, unique=True)
        .map(lambda c: PointSet.from_coords(c))
        .filter(in_general_position)
    )


def pts(*xy) -> list[Point]:
    return [Point(x, y) for x, y in xy]


def parabola_band(n: int, seed: int, sign: int = 1, noise: int = 2000) -> PointSet:
    """Points in a thin band around y = sign * x^2 / 10^4 (a cup for sign 1)."""
    rng = random.Random(seed)
    while True:
        xs = rng.sample(range(-10**5, 10**5), n)
        coords = [(x, sign * (x * x) // 10**4 + rng.randint(-noise, noise)) for x in xs]
        if len(set(coords)) == n:
            P = PointSet.from_coords(coords)
            if in_general_position(P):
                return P


def dipped_cap(N: int = 64, seed: int = 0, dip: float = -200.0, jitter: int = 30000) -> PointSet:
    """Seven x-separated clusters on the concave parabola y = -x^2/100.

    The third cluster spreads over eight sub-clusters; the fifth of them is
    lowered by ``dip``. With k = 8 its strip lands below the chord of its
    inner neighbours once the cap has grown to seven sets, while the window
    of five stays convex.
    """
    rng = random.Random(seed)
    centres = [(-300.0, N), (-200.0, N)] + [(-87.5 + 25 * i, N // 8) for i in range(8)]
    centres += [(200.0, N), (300.0, N), (400.0, N), (500.0, N)]
    while True:
        coords = []
        for j, (cx, count) in enumerate(centres):
            cy = -cx * cx / 100 + (dip if j == 6 else 0)
            for _ in range(count):
                coords.append(
                    (round(cx * 10**4) + rng.randint(-jitter, jitter), round(cy * 10**4) + rng.randint(-jitter, jitter))
                )
        if len(set(coords)) == len(coords):
            P = PointSet.from_coords(coords)
            if in_general_position(P):
                return P


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
