"""Crossing families from convex bundles, plus the incomparability and
avoiding-pair machinery for separated point sets.

For separated A and B, x <_B y (x, y in A) means B lies strictly left of the
line oriented from x to y. Two points are incomparable exactly when their
line meets conv(B); the count of incomparable pairs is iota(A, <_B).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _exact
from ._clique import crossing_matrix, max_clique
from .bundle import BundleRunConfig, DichotomyResult, find_bundle_or_noncrossing
from .errors import InsufficientPoints, InvariantViolation
from .families import CrossingFamily, verify_crossing_family
from .geometry import OrientedLine, Point, PointSet, Segment, convex_hull, orientation, separated


def before(x: Point, y: Point, B: PointSet) -> bool:
    """x <_B y: all of B strictly left of the line x -> y."""
    return all(orientation(x, y, b) > 0 for b in B.points)


@dataclass(frozen=True)
class PartialOrderReport:
    A: PointSet
    B: PointSet
    # (id_x, id_y) with x <_B y
    relation: tuple[tuple[int, int], ...]
    iota: int
    # incomparable pairs computed from the order agree with the hull-stabbing test
    stab_agrees: bool


def _line_meets_hull(x: Point, y: Point, hull: list[Point]) -> bool:
    """Does the line through x and y meet conv(hull)? Edge-by-edge test."""
    if len(hull) == 1:
        return orientation(x, y, hull[0]) == 0
    edges = zip(hull, hull[1:] + hull[:1]) if len(hull) > 2 else [(hull[0], hull[1])]
    for u, v in edges:
        su, sv = orientation(x, y, u), orientation(x, y, v)
        if su == 0 or sv == 0 or su != sv:
            return True
    return False


def incomparable_count(A: PointSet, B: PointSet) -> PartialOrderReport:
    if separated(A, B) is None:
        raise ValueError("A and B are not separated")
    coords = _exact.scaled_coords(A.points + B.points)
    na = len(A)
    pairs = list(itertools.combinations(range(na), 2))
    relation = []
    incomparable = set()
    if pairs:
        p, q = zip(*pairs)
        S = _exact.line_sides(coords, p, q, range(na, na + len(B)))
        fwd = np.all(S > 0, axis=1)
        bwd = np.all(S < 0, axis=1)
        for t, (i, j) in enumerate(pairs):
            if fwd[t]:
                relation.append((A.ids[i], A.ids[j]))
            elif bwd[t]:
                relation.append((A.ids[j], A.ids[i]))
            else:
                incomparable.add((i, j))
    hull = convex_hull(B)
    stabbed = {(i, j) for i, j in pairs if _line_meets_hull(A.points[i], A.points[j], hull)}
    return PartialOrderReport(A, B, tuple(sorted(relation)), len(incomparable), stabbed == incomparable)


def is_strict_partial_order(report: PartialOrderReport) -> bool:
    """Irreflexive and transitive (hence antisymmetric), checked exhaustively."""
    rel = set(report.relation)
    if any(x == y for x, y in rel) or any((y, x) in rel for x, y in rel):
        return False
    succ: dict[int, set[int]] = {}
    for x, y in rel:
        succ.setdefault(x, set()).add(y)
    for x, ys in succ.items():
        for y in ys:
            if not succ.get(y, set()) <= ys:
                return False
    return True


@dataclass(frozen=True)
class AvoidingPairReport:
    A: PointSet
    B: PointSet
    iota_ab: int
    iota_ba: int
    epsilon: Fraction
    avoiding: bool

    @property
    def m(self) -> int:
        return len(self.A)


def avoiding_bound(iota_ab: int, iota_ba: int, epsilon, m: int) -> bool:
    """iota(A, <_B) + iota(B, <_A) <= epsilon * m^2, exactly."""
    return iota_ab + iota_ba <= Fraction(epsilon) * m * m


def epsilon_avoiding(A: PointSet, B: PointSet, epsilon) -> AvoidingPairReport:
    if len(A) != len(B):
        raise ValueError("avoiding pairs need |A| = |B|")
    eps = Fraction(epsilon)
    m = len(A)
    iab = incomparable_count(A, B).iota
    iba = incomparable_count(B, A).iota
    return AvoidingPairReport(A, B, iab, iba, eps, avoiding_bound(iab, iba, eps, m))


@dataclass(frozen=True)
class ClusterDecomposition:
    lines: tuple[OrientedLine, ...]
    # a nonempty cell of the line arrangement, named by its side-sign vector
    cells: tuple[tuple[int, ...], ...]
    clusters: tuple[PointSet, ...]
    cluster_cell: tuple[int, ...]
    exceptional: tuple[PointSet, ...]


def grid_lines(P: PointSet, budget: int) -> list[OrientedLine]:
    """Up to ``budget`` lines in about sqrt(budget) directions, each placed in
    a gap between consecutive projections near an even quantile."""
    if budget <= 0 or len(P) < 2:
        return []
    ndir = max(1, math.isqrt(budget - 1) + 1)
    per = -(-budget // ndir)
    lines: list[OrientedLine] = []
    for j in range(ndir):
        nx, ny = Fraction(j + 1), Fraction(1)
        vals = sorted({nx * p.x + ny * p.y for p in P.points})
        if len(vals) < 2:
            continue
        cuts = []
        for t in range(per):
            q = max(1, min(len(vals) - 1, round((t + 1) * len(vals) / (per + 1))))
            c = (vals[q - 1] + vals[q]) / 2
            if c not in cuts:
                cuts.append(c)
        for c in cuts:
            if len(lines) == budget:
                break
            p0 = Point(Fraction(0), c / ny)
            lines.append(OrientedLine(p0, Point(p0.x - ny, p0.y + nx)))
    return lines


def cluster_decompose(P: PointSet, m: int, lines: int | Sequence[OrientedLine] = 0) -> ClusterDecomposition:
    """Cut each nonempty arrangement cell into consecutive x-blocks of m points;
    a leftover block of fewer than m points is the cell's exceptional part."""
    if m < 1:
        raise ValueError("m must be >= 1")
    L = grid_lines(P, lines) if isinstance(lines, int) else list(lines)
    by_cell: dict[tuple[int, ...], list[int]] = {}
    for i, p in enumerate(P.points):
        by_cell.setdefault(tuple(ln.side(p) for ln in L), []).append(i)
    cells = tuple(sorted(by_cell))
    clusters, owner, exceptional = [], [], []
    for c, key in enumerate(cells):
        members = sorted(by_cell[key], key=lambda i: P.points[i])
        full = len(members) - len(members) % m
        for s in range(0, full, m):
            clusters.append(P.subset(members[s : s + m]))
            owner.append(c)
        if full < len(members):
            exceptional.append(P.subset(members[full:]))
    return ClusterDecomposition(tuple(L), cells, tuple(clusters), tuple(owner), tuple(exceptional))


def find_avoiding_pair(
    P1: PointSet, P2: PointSet, m: int, epsilon, budget: int | None = None
) -> AvoidingPairReport | None:
    """First cluster pair (C1 in P1, C2 in P2) that is epsilon-avoiding.

    Line budgets 0, 1, 2, 4, ... up to ``budget`` are tried in turn, since a
    fine grid on a small input leaves no cell with m points. The default cap
    is ceil(1/epsilon) lines in each of ceil(1/epsilon) directions.
    """
    if separated(P1, P2) is None:
        raise ValueError("P1 and P2 are not separated")
    if abs(len(P1) - len(P2)) > 1:
        raise ValueError("||P1| - |P2|| must be at most 1")
    eps = Fraction(epsilon)
    if budget is None:
        g = math.ceil(1 / eps) if eps > 0 else len(P1) + len(P2)
        budget = g * g
    if set(P1.ids) & set(P2.ids):
        both = PointSet(P1.points + P2.points)
    else:
        both = PointSet.union([P1, P2])
    pts1 = set(P1.points)
    schedule = [0] + [1 << i for i in range(budget.bit_length()) if 1 << i < budget] + ([budget] if budget else [])
    for b in schedule:
        dec = cluster_decompose(both, m, b)
        side1 = [C for C in dec.clusters if set(C.points) <= pts1]
        side2 = [C for C in dec.clusters if not set(C.points) & pts1]
        for C1 in side1:
            for C2 in side2:
                rep = epsilon_avoiding(C1, C2, eps)
                if rep.avoiding:
                    return rep
    return None


@dataclass(frozen=True)
class PRTParameters:
    s: int
    K: int
    M: int
    epsilon: Fraction

    @classmethod
    def from_s(cls, s: int) -> "PRTParameters":
        if s < 1:
            raise ValueError("s must be >= 1")
        K = 8 ** math.comb(s, 2)
        return cls(s, K, 9**s * K, Fraction(1, 2 ** (3 * s + 11)))


def bipartite_crossing_family(
    A: PointSet, B: PointSet, mode: str = "auto", exact_cutoff: int = 400, max_nodes: int | None = None
) -> CrossingFamily:
    """Pairwise crossing A-to-B segments; maximum in exact mode, greedily
    maximal otherwise. ``auto`` is exact when |A|*|B| <= exact_cutoff."""
    if not len(A) or not len(B):
        raise ValueError("A and B must be nonempty")
    if mode == "auto":
        mode = "exact" if len(A) * len(B) <= exact_cutoff else "greedy"
    coords = _exact.scaled_coords(A.points + B.points)
    na = len(A)
    segs = [(i, na + j) for i in range(na) for j in range(len(B))]
    X = crossing_matrix(coords, segs)
    if mode == "exact":
        chosen = max_clique(X, max_nodes=max_nodes).vertices
    elif mode == "greedy":
        deg = X.sum(axis=1)
        chosen = []
        for v in sorted(range(len(segs)), key=lambda v: (-int(deg[v]), v)):
            if all(X[v, u] for u in chosen):
                chosen.append(v)
        chosen.sort()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    pts = A.points + B.points
    F = CrossingFamily(tuple(Segment(pts[segs[v][0]], pts[segs[v][1]]) for v in chosen), (A, B))
    if not verify_crossing_family(F, PointSet(A.points + B.points)):
        raise InvariantViolation("bipartite family failed verification")
    return F


def find_crossing_or_noncrossing(
    P: PointSet, m: int, cfg: BundleRunConfig, mode: str = "auto", exact_cutoff: int = 400
) -> DichotomyResult:
    """Crossing family from a convex bundle of size 2k (k = n / (2 c_eff m)),
    or the non-crossing family the bundle search ran into."""
    k = math.floor(Fraction(len(P)) / (2 * cfg.c_eff * m))
    if k < 1:
        raise InsufficientPoints(f"n = {len(P)} gives k = 0 for m = {m}, c_eff = {cfg.c_eff}")
    inner = BundleRunConfig(2 * k, m, cfg.c_eff, cfg.same_type, cfg.rng_seed, cfg.check_invariants)
    res = find_bundle_or_noncrossing(P, inner)
    trace = list(res.trace)
    if res.bundle is None:
        return res
    parts = res.bundle.parts
    segments: list[Segment] = []
    sizes = []
    for i in range(k):
        Ai, Bi = parts[i], parts[i + k]
        w = min(len(Ai), len(Bi))
        Ai, Bi = Ai.select_ids(sorted(Ai.ids)[:w]), Bi.select_ids(sorted(Bi.ids)[:w])
        Fi = bipartite_crossing_family(Ai, Bi, mode=mode, exact_cutoff=exact_cutoff)
        segments.extend(Fi.segments)
        sizes.append(len(Fi))
    sides = (PointSet.union(parts[:k]), PointSet.union(parts[k:]))
    F = CrossingFamily(tuple(segments), sides)
    if len(F) != sum(sizes) or not verify_crossing_family(F, P):
        raise InvariantViolation("union of per-pair families is not a crossing family")
    trace.append({"stage": "pairs", "k": k, "sizes": sizes, "total": len(F)})
    return DichotomyResult(crossing=F, support=res.bundle, trace=tuple(trace))

