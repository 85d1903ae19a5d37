"""Exhaustive ground truth for crossing families and non-crossing quadruples.

``bipartite_family_exact`` deliberately shares no search code with the
crossing builder: it backtracks over segments with plain
:func:`segments_cross` calls, so agreement between the two is a real
cross-check.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import _exact
from ._clique import crossing_matrix, max_clique
from .errors import OracleTimeout
from .families import CrossingFamily, verify_crossing_family
from .geometry import PointSet, Segment, orientation, point_in_triangle, segments_cross


@dataclass(frozen=True)
class OracleBudget:
    max_segments: int = 400
    max_nodes: int = 50_000_000
    timeout: float = 600.0

    def __post_init__(self):
        if self.max_segments <= 0 or self.max_nodes <= 0 or self.timeout <= 0:
            raise ValueError("budget fields must be positive")


@dataclass(frozen=True)
class OracleResult:
    family: CrossingFamily
    optimal: bool
    nodes: int


def max_crossing_family_exact(P: PointSet, budget: OracleBudget = OracleBudget()) -> OracleResult:
    """Largest family of pairwise crossing, endpoint-disjoint segments on P."""
    segs = list(itertools.combinations(range(len(P)), 2))
    if len(segs) > budget.max_segments:
        raise ValueError(f"{len(segs)} segments exceed the budget of {budget.max_segments}")
    X = crossing_matrix(_exact.scaled_coords(P.points), segs)
    try:
        res = max_clique(X, max_nodes=budget.max_nodes, timeout=budget.timeout)
    except OracleTimeout as e:
        fam = CrossingFamily(tuple(Segment(P.points[segs[v][0]], P.points[segs[v][1]]) for v in e.best))
        raise OracleTimeout(str(e), best=OracleResult(fam, False, e.nodes), nodes=e.nodes) from None
    fam = CrossingFamily(tuple(Segment(P.points[segs[v][0]], P.points[segs[v][1]]) for v in res.vertices))
    assert verify_crossing_family(fam, P)
    return OracleResult(fam, True, res.nodes)


def exists_noncrossing_of_size_one(P: PointSet) -> bool:
    """Some point of P lies inside a triangle spanned by three others."""
    pts = P.points
    for a, b, c in itertools.combinations(pts, 3):
        if orientation(a, b, c) == 0:
            continue
        for d in pts:
            if d not in (a, b, c) and point_in_triangle(d, a, b, c):
                return True
    return False


def bipartite_family_exact(A: PointSet, B: PointSet, budget: OracleBudget = OracleBudget()) -> OracleResult:
    """Largest pairwise crossing family of A-to-B segments, by backtracking."""
    segs = [Segment(a, b) for a in A.points for b in B.points]
    if len(segs) > budget.max_segments:
        raise ValueError(f"{len(segs)} segments exceed the budget of {budget.max_segments}")
    n = len(segs)
    cross = [[segments_cross(s, t) for t in segs] for s in segs]
    best: list[int] = []
    nodes = 0
    deadline = time.monotonic() + budget.timeout
    cap = min(len(A), len(B))

    def grow(chosen: list[int], start: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget.max_nodes or (nodes % 4096 == 0 and time.monotonic() > deadline):
            raise _Budget
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) == cap:
            raise _Done
        for v in range(start, n):
            if len(chosen) + (n - v) <= len(best):
                return
            if all(cross[v][u] for u in chosen):
                chosen.append(v)
                grow(chosen, v + 1)
                chosen.pop()

    optimal = True
    try:
        grow([], 0)
    except _Done:
        pass
    except _Budget:
        optimal = False
    fam = CrossingFamily(tuple(segs[v] for v in best), (A, B))
    if not optimal:
        raise OracleTimeout("bipartite oracle budget exhausted", best=OracleResult(fam, False, nodes), nodes=nodes)
    return OracleResult(fam, True, nodes)


class _Budget(Exception):
    pass


class _Done(Exception):
    pass
