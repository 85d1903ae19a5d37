from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings

from conftest import brute_hull_vertices, brute_orientation, general_position_sets, random_gp
from crossfam.errors import OracleTimeout
from crossfam.families import verify_crossing_family
from crossfam.generate import convex
from crossfam.geometry import PointSet, convex_position
from crossfam.oracles import (
    OracleBudget,
    bipartite_family_exact,
    exists_noncrossing_of_size_one,
    max_crossing_family_exact,
)


def xy(P: PointSet):
    return [(int(p.x), int(p.y)) for p in P.points]


def brute_cross(s, t) -> bool:
    (a, b), (c, d) = s, t
    return (
        brute_orientation(a, b, c) * brute_orientation(a, b, d) < 0
        and brute_orientation(c, d, a) * brute_orientation(c, d, b) < 0
    )


def brute_max_family(coords) -> int:
    """Largest pairwise crossing matching, by recursion over partial matchings."""
    best = 0

    def go(free: list[int], chosen: list[tuple]):
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + len(free) // 2 <= best:
            return
        for i, j in itertools.combinations(free, 2):
            seg = (coords[i], coords[j])
            if all(brute_cross(seg, s) for s in chosen):
                go([v for v in free if v > i and v != j], chosen + [seg])

    go(list(range(len(coords))), [])
    return best


def brute_bipartite(a_xy, b_xy) -> int:
    best = 0
    for r in range(1, min(len(a_xy), len(b_xy)) + 1):
        for A in itertools.combinations(a_xy, r):
            for B in itertools.permutations(b_xy, r):
                segs = list(zip(A, B))
                if all(brute_cross(s, t) for s, t in itertools.combinations(segs, 2)):
                    best = r
                    break
            if best == r:
                break
        if best < r:
            break
    return best


def test_small_examples():
    square = PointSet.from_coords([(0, 0), (10, 0), (10, 10), (0, 10)])
    assert len(max_crossing_family_exact(square).family) == 2
    interior = PointSet.from_coords([(0, 0), (10, 0), (5, 10), (5, 3)])
    assert len(max_crossing_family_exact(interior).family) == 1
    assert brute_max_family(xy(interior)) == 1


@pytest.mark.parametrize("n", range(4, 13))
def test_convex_position_gives_half(n):
    P = convex(n, seed=n)
    res = max_crossing_family_exact(P)
    assert res.optimal and len(res.family) == n // 2
    assert verify_crossing_family(res.family, P)


def test_matches_brute_force_on_random_sets():
    rng = random.Random(5)
    for n in (5, 6, 7, 8, 8, 9):
        P = random_gp(n, rng, span=200)
        res = max_crossing_family_exact(P)
        assert len(res.family) == brute_max_family(xy(P))
        assert verify_crossing_family(res.family, P)


@settings(max_examples=30, deadline=None)
@given(general_position_sets(4, 8, span=60))
def test_noncrossing_of_size_one_is_not_convex_position(P):
    assert exists_noncrossing_of_size_one(P) == (not convex_position(P))
    assert exists_noncrossing_of_size_one(P) == (len(brute_hull_vertices(xy(P))) < len(P) or any(
        len(brute_hull_vertices([xy(P)[i] for i in q])) < 4 for q in itertools.combinations(range(len(P)), 4)
    ))


def test_noncrossing_of_size_one_examples():
    square = [(0, 0), (10, 0), (10, 10), (0, 10)]
    assert not exists_noncrossing_of_size_one(PointSet.from_coords(square))
    assert exists_noncrossing_of_size_one(PointSet.from_coords(square + [(5, 4)]))


def test_bipartite_examples():
    P = convex(8, seed=1)
    assert len(brute_hull_vertices(xy(P))) == 8
    # opposite arcs of the convex octagon, which is centred at the origin
    arc = sorted(range(8), key=lambda i: math.atan2(P.points[i].y, P.points[i].x))
    A, B = P.subset(arc[:4]), P.subset(arc[4:])
    ordered = arc
    assert len(bipartite_family_exact(A, B).family) == 4
    one = bipartite_family_exact(P.subset([ordered[0]]), P.subset([ordered[1]]))
    assert len(one.family) == 1


def test_bipartite_matches_subset_enumeration():
    rng = random.Random(9)
    for _ in range(12):
        P = random_gp(10, rng, span=300)
        A, B = P.subset(range(5)), P.subset(range(5, 10))
        res = bipartite_family_exact(A, B)
        assert len(res.family) == brute_bipartite(xy(A), xy(B))
        assert verify_crossing_family(res.family, P)


def test_budget_validation_and_timeout():
    with pytest.raises(ValueError):
        OracleBudget(max_nodes=0)
    P = convex(12, seed=0)
    with pytest.raises(OracleTimeout) as info:
        max_crossing_family_exact(P, OracleBudget(max_nodes=3))
    assert info.value.best is not None and not info.value.best.optimal
    with pytest.raises(ValueError):
        max_crossing_family_exact(convex(30, seed=0))
    A, B = P.subset(range(6)), P.subset(range(6, 12))
    with pytest.raises(OracleTimeout) as info:
        bipartite_family_exact(A, B, OracleBudget(max_nodes=2))
    assert verify_crossing_family(info.value.best.family, P)


def test_oracle_dominates_pipeline_output():
    from crossfam.bundle import BundleRunConfig
    from crossfam.crossing import find_crossing_or_noncrossing

    P = convex(12, seed=4)
    res = find_crossing_or_noncrossing(P, 2, BundleRunConfig(k=1, m=2, c_eff=1))
    assert res.crossing is not None
    assert len(max_crossing_family_exact(P).family) >= len(res.crossing)
