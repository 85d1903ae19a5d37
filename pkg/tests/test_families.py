from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_orientation, random_gp
from crossfam.errors import DegenerateInput
from crossfam.families import (
    ConvexBundle,
    CrossingFamily,
    NonCrossingFamily,
    SpokeSet,
    bundle_to_crossing_family,
    fast_noncrossing_check,
    unbounded_cell_signs,
    verify_convex_bundle,
    verify_crossing_family,
    verify_noncrossing_family,
    verify_spoke_set,
    spoke_set_from_crossing_family,
)
from crossfam.generate import convex
from crossfam.geometry import OrientedLine, Point, PointSet, Segment, convex_hull, in_general_position
from crossfam.oracles import max_crossing_family_exact
from crossfam.sametype import SameTypeCertificate, verify_same_type
from crossfam.spokes import six_point_gap_instance


def brute_inside(p4, p1, p2, p3) -> bool:
    o = [brute_orientation(p1, p2, p4), brute_orientation(p2, p3, p4), brute_orientation(p3, p1, p4)]
    return o[0] == o[1] == o[2] != 0


def xy(S: PointSet):
    return [(int(p.x), int(p.y)) for p in S.points]


def bundle(parts: list[PointSet]) -> ConvexBundle:
    cert = verify_same_type(parts)
    if cert is None:
        cert = SameTypeCertificate(tuple(range(len(parts))), {}, tuple(min(p.ids) for p in parts))
    return ConvexBundle(tuple(parts), cert)


def ids_split(P: PointSet, groups) -> list[PointSet]:
    return [P.select_ids(g) for g in groups]


def test_crossing_family_examples():
    square = PointSet.from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    a, b, c, d = square.points
    F = CrossingFamily((Segment(a, c), Segment(b, d)))
    assert verify_crossing_family(F, square) and F.size == 2
    H = PointSet.from_coords([(0, 0), (1, 0), (0, 1), (1, 1)])
    p, q, r, s = H.points
    assert not verify_crossing_family(CrossingFamily((Segment(p, q), Segment(r, s))), H)


def test_crossing_family_on_ten_convex_points():
    P = convex(10, seed=0)
    cyc = convex_hull(P)
    assert len(cyc) == 10
    F = CrossingFamily(tuple(Segment(cyc[i], cyc[i + 5]) for i in range(5)))
    assert verify_crossing_family(F, P)
    # independent pairwise check by the hand determinant
    for s, t in itertools.combinations(F.segments, 2):
        e = [(int(v.x), int(v.y)) for v in (s.a, s.b, t.a, t.b)]
        assert brute_orientation(e[0], e[1], e[2]) != brute_orientation(e[0], e[1], e[3])
        assert brute_orientation(e[2], e[3], e[0]) != brute_orientation(e[2], e[3], e[1])


def test_crossing_family_rejects_foreign_or_repeated_endpoints():
    square = PointSet.from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    a, b, c, d = square.points
    assert not verify_crossing_family(CrossingFamily((Segment(a, Point(11, 11)),)), square)
    assert not verify_crossing_family(CrossingFamily((Segment(a, c), Segment(a, c))), square)
    sides = (square.subset([0, 1]), square.subset([2, 3]))
    assert verify_crossing_family(CrossingFamily((Segment(a, c), Segment(b, d)), sides), square)
    bad = (square.subset([0, 2]), square.subset([1, 3]))
    assert not verify_crossing_family(CrossingFamily((Segment(a, c), Segment(b, d)), bad), square)


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 12), st.integers(0, 10**6), st.data())
def test_crossing_family_downward_closed(n, seed, data):
    P = convex(2 * n, seed=seed, radius=10**4)
    cyc = convex_hull(P)
    F = CrossingFamily(tuple(Segment(cyc[i], cyc[i + n]) for i in range(n)))
    assert verify_crossing_family(F, P)
    keep = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    assert verify_crossing_family(CrossingFamily(tuple(F.segments[i] for i in keep)), P)


def test_noncrossing_examples():
    one = NonCrossingFamily(*(PointSet.from_coords([c]) for c in [(0, 0), (10, 0), (5, 10), (5, 3)]))
    assert verify_noncrossing_family(one) and one.size == 1
    assert fast_noncrossing_check(one)
    P = PointSet.from_coords([(0, 0), (10, 0), (5, 10), (5, 3), (20, 20)])
    two = NonCrossingFamily(*ids_split(P, [[0], [1], [2], [3, 4]]))
    assert not verify_noncrossing_family(two) and not fast_noncrossing_check(two)


def test_noncrossing_size_two_pattern():
    coords = [(0, 0), (3, 1), (1000, 0), (997, 2), (500, 1000), (503, 997), (500, 300), (502, 305)]
    P = PointSet.from_coords(coords).checked()
    N = NonCrossingFamily(*ids_split(P, [[0, 1], [2, 3], [4, 5], [6, 7]]))
    assert N.size == 2
    assert verify_noncrossing_family(N)
    quads = list(itertools.product(*(xy(S) for S in N.parts)))
    assert len(quads) == 16 and all(brute_inside(q[3], q[0], q[1], q[2]) for q in quads)
    assert fast_noncrossing_check(N)


def test_noncrossing_rejects_overlap_and_empty():
    P = PointSet.from_coords([(0, 0), (10, 0), (5, 10), (5, 3)])
    assert not verify_noncrossing_family(NonCrossingFamily(*ids_split(P, [[0], [1], [2], [0]])))
    assert not verify_noncrossing_family(NonCrossingFamily(P.subset([0]), P.subset([1]), P.subset([2]), PointSet(())))


def test_fast_check_agrees_with_brute_force_on_random_families():
    """Search for a valid family the fast check rejects.

    In general position none exists: with p4 inside p1p2p3 the orientation of
    (p1, p2, p3) equals that of (p1, p2, p4), (p2, p3, p4) and (p3, p1, p4), so
    it cannot depend on any single choice. The search confirms agreement.
    """
    rng = random.Random(8)
    valid = 0
    for _ in range(300):
        corners = [(0, 0), (10**4, 0), (5000, 10**4), (5000, 3000)]
        coords = []
        for cx, cy in corners:
            spread = rng.choice([50, 500, 2500])
            for _ in range(rng.randint(1, 3)):
                coords.append((cx + rng.randint(-spread, spread), cy + rng.randint(-spread, spread)))
        if len(set(coords)) != len(coords):
            continue
        P = PointSet.from_coords(coords)
        if not in_general_position(P):
            continue
        # regroup by nearest corner
        groups = [[] for _ in range(4)]
        for i, (x, y) in enumerate(coords):
            j = min(range(4), key=lambda c: (x - corners[c][0]) ** 2 + (y - corners[c][1]) ** 2)
            groups[j].append(i)
        if any(not g for g in groups):
            continue
        N = NonCrossingFamily(*ids_split(P, groups))
        brute = verify_noncrossing_family(N)
        valid += brute
        assert fast_noncrossing_check(N) == brute
    assert valid > 30


def test_convex_bundle_examples():
    T = PointSet.from_coords([(0, 0), (10, 0), (5, 10)])
    assert verify_convex_bundle(bundle([T.subset([i]) for i in range(3)]))
    big = 10**6
    coords = [(0, 0), (7, 3), (big, 0), (big - 5, 9), (big, big), (big - 8, big - 2), (0, big), (4, big - 11)]
    P = PointSet.from_coords(coords).checked()
    parts = ids_split(P, [[0, 1], [2, 3], [4, 5], [6, 7]])
    B = bundle(parts)
    assert B.size == 4 and B.width == 2
    assert verify_convex_bundle(B)
    for choice in itertools.product(*(xy(S) for S in parts)):
        turns = {brute_orientation(choice[i], choice[(i + 1) % 4], choice[(i + 2) % 4]) for i in range(4)}
        assert turns == {1}
    planted = PointSet.from_coords(coords[:4] + [(big, big), (10, 13)] + coords[6:]).checked()
    bad = ids_split(planted, [[0, 1], [2, 3], [4, 5], [6, 7]])
    assert not verify_convex_bundle(bundle(bad))


def test_convex_bundle_wrong_order_or_signature_fails():
    P = PointSet.from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    crossed = [P.subset([0]), P.subset([2]), P.subset([1]), P.subset([3])]
    assert not verify_convex_bundle(bundle(crossed))
    good = [P.subset([i]) for i in range(4)]
    forged = ConvexBundle(tuple(good), SameTypeCertificate((0, 1, 2, 3), {}, (0, 1, 2, 3)))
    assert not verify_convex_bundle(forged)


def test_bundle_to_crossing_family_examples():
    square = PointSet.from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    F = bundle_to_crossing_family(bundle([square.subset([i]) for i in range(4)]))
    a, b, c, d = square.points
    assert F.segments == (Segment(a, c), Segment(b, d))
    hexagon = PointSet.from_coords([(20, 0), (10, 17), (-10, 17), (-20, 0), (-10, -17), (10, -17)]).checked()
    F6 = bundle_to_crossing_family(bundle([hexagon.subset([i]) for i in range(6)]))
    assert len(F6) == 3 and verify_crossing_family(F6, hexagon)
    with pytest.raises(ValueError):
        bundle_to_crossing_family(bundle([hexagon.subset([i]) for i in range(5)]))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_even_bundles_give_half_size_families(k, seed):
    P = convex(2 * k, seed=seed, radius=10**5)
    cyc = convex_hull(P)
    parts = [P.select_ids([P.ids[P.index_of[v]]]) for v in cyc]
    B = bundle(parts)
    assert verify_convex_bundle(B)
    F = bundle_to_crossing_family(B)
    assert len(F) == k and verify_crossing_family(F, P)


def test_spoke_set_examples():
    line = SpokeSet((OrientedLine(Point(0, 0), Point(1, 0)),))
    assert verify_spoke_set(line, PointSet.from_coords([(0, 1), (0, -1)]))
    assert not verify_spoke_set(line, PointSet.from_coords([(0, 1), (3, 1)]))
    cross = SpokeSet((OrientedLine(Point(0, 0), Point(1, 0)), OrientedLine(Point(0, 0), Point(0, 1))))
    assert len(unbounded_cell_signs(cross)) == 4
    three = PointSet.from_coords([(1, 1), (-1, 1), (-1, -1)])
    assert not verify_spoke_set(cross, three)
    assert verify_spoke_set(cross, PointSet.from_coords([(1, 1), (-1, 1), (-1, -1), (1, -1)]))
    parallel = SpokeSet((OrientedLine(Point(0, 0), Point(1, 0)), OrientedLine(Point(0, 1), Point(1, 1))))
    with pytest.raises(DegenerateInput):
        verify_spoke_set(parallel, three)


def test_unbounded_cells_of_concurrent_lines():
    # three lines through the origin: 6 unbounded cells, each a wedge
    L = SpokeSet(tuple(OrientedLine(Point(0, 0), Point(*d)) for d in [(1, 0), (1, 1), (0, 1)]))
    cells = unbounded_cell_signs(L)
    assert len(cells) == len(set(cells)) == 6
    wedge_points = PointSet.from_coords([(10, 1), (1, 10), (-1, 10), (-10, -1), (-1, -10), (1, -10)])
    assert verify_spoke_set(L, wedge_points)
    assert not verify_spoke_set(L, wedge_points.subset(range(5)))


def test_unbounded_cells_of_general_lines():
    """Cells far out along each direction, cross-checked by sampling a big circle."""
    rng = random.Random(2)
    for _ in range(20):
        lines = []
        while len(lines) < rng.randint(1, 5):
            p = Point(rng.randint(-50, 50), rng.randint(-50, 50))
            q = Point(p.x + rng.randint(-20, 20), p.y + rng.randint(-20, 20))
            if p == q:
                continue
            ln = OrientedLine(p, q)
            if any(ln.direction[0] * o.direction[1] - ln.direction[1] * o.direction[0] == 0 for o in lines):
                continue
            lines.append(ln)
        L = SpokeSet(tuple(lines))
        cells = set(unbounded_cell_signs(L))
        assert len(cells) == 2 * len(lines)
        ring = set()
        for i in range(3600):
            a = 2 * math.pi * i / 3600
            p = Point(round(10**7 * math.cos(a)), round(10**7 * math.sin(a)))
            sig = tuple(ln.side(p) for ln in lines)
            if 0 not in sig:
                ring.add(sig)
        assert ring == cells


def test_six_point_gap_instance():
    P, L = six_point_gap_instance()
    assert len(P) == 6 and len(L) == 3
    assert verify_spoke_set(L, P)
    best = max_crossing_family_exact(P)
    assert best.optimal and best.family.size == 2


def test_spoke_set_from_crossing_family():
    for seed in range(5):
        P = convex(10, seed=seed)
        cyc = convex_hull(P)
        F = CrossingFamily(tuple(Segment(cyc[i], cyc[i + 5]) for i in range(5)))
        L = spoke_set_from_crossing_family(F, P)
        assert len(L) == 5 and verify_spoke_set(L, P)
    rng = random.Random(4)
    for _ in range(5):
        P = random_gp(9, rng, span=1000)
        F = max_crossing_family_exact(P).family
        L = spoke_set_from_crossing_family(F, P)
        assert len(L) == len(F) and verify_spoke_set(L, P)
