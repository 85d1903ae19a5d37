"""Order types, the same-type property, and a certificate-producing reducer.

The reducer never trusts its own bookkeeping: whatever it returns has been
re-checked by :func:`verify_same_type`, the brute-force authority.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _exact
from .geometry import Point, PointSet, convex_hull, ham_sandwich, in_general_position, orientation
from .errors import DegenerateInput, InvariantViolation, ReductionExhausted

log = logging.getLogger(__name__)

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class OrderType:
    signature: dict[Triple, int]

    def __getitem__(self, t: Triple) -> int:
        return self.signature[t]


@dataclass(frozen=True)
class SameTypeCertificate:
    """Signature of a same-type tuple of sets.

    ``signature[(i, j, k)]`` (i < j < k) is the orientation of every
    (y_i, y_j, y_k) with y_t drawn from set t; ``witness`` holds one point id
    per set.
    """

    set_ids: tuple[int, ...]
    signature: dict[Triple, int]
    witness: tuple[int, ...]

    def sign(self, i: int, j: int, k: int) -> int:
        """Orientation for sets in the given (not necessarily sorted) order."""
        order = sorted((i, j, k))
        base = self.signature[tuple(order)]
        # parity of the permutation taking (i, j, k) to sorted order
        perm = [order.index(v) for v in (i, j, k)]
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        return base if inversions % 2 == 0 else -base


@dataclass(frozen=True)
class SameTypeConfig:
    min_width: int = 1
    max_halving_rounds: int = 10_000
    rng_seed: int = 0
    # candidate lines per move before the seeded RNG subsamples them
    max_candidates: int = 20_000

    def __post_init__(self):
        if self.min_width < 1:
            raise ValueError("min_width must be >= 1")


def order_type(S: Sequence[Point] | PointSet) -> OrderType:
    pts = list(S.points if isinstance(S, PointSet) else S)
    if len(pts) < 3:
        raise ValueError("order type needs at least 3 points")
    sig = {}
    for t in itertools.combinations(range(len(pts)), 3):
        o = orientation(*(pts[i] for i in t))
        if o == 0:
            raise DegenerateInput(f"collinear triple {t}")
        sig[t] = o
    return OrderType(sig)


def _stack(sets: Sequence[PointSet]):
    pts: list[Point] = []
    members = []
    for s in sets:
        members.append(np.arange(len(pts), len(pts) + len(s), dtype=np.intp))
        pts.extend(s.points)
    return pts, members


def verify_same_type(sets: Sequence[PointSet]) -> SameTypeCertificate | None:
    """Brute force over every cross-choice of every set triple."""
    if any(len(s) == 0 for s in sets):
        raise ValueError("sets must be nonempty")
    pts, members = _stack(sets)
    coords = _exact.scaled_coords(pts)
    sig = {}
    for t in itertools.combinations(range(len(sets)), 3):
        T = _exact.triple_tensor(coords, *(members[i] for i in t))
        first = int(T.flat[0])
        if first == 0 or not np.all(T == first):
            return None
        sig[t] = first
    return SameTypeCertificate(
        tuple(range(len(sets))), sig, tuple(min(s.ids) for s in sets)
    )


def well_separated(sets: Sequence[PointSet]) -> bool:
    """No line meets the hulls of any three of the sets.

    Orientation is affine in each argument, so it suffices to test hull
    vertices; this is the fast check the reducer can afford on big sets.
    """
    hulls = [convex_hull(s) for s in sets]
    pts, members = _stack([PointSet(tuple(h)) for h in hulls])
    coords = _exact.scaled_coords(pts)
    for t in itertools.combinations(range(len(sets)), 3):
        T = _exact.triple_tensor(coords, *(members[i] for i in t))
        first = int(T.flat[0])
        if first == 0 or not np.all(T == first):
            return False
    return True


@dataclass
class _Move:
    kind: str
    kept: tuple[np.ndarray, np.ndarray, np.ndarray]
    offense: int
    order: tuple = ()
    min_card: int = field(init=False)
    total: int = field(init=False)

    def __post_init__(self):
        sizes = [len(k) for k in self.kept]
        self.min_card = min(sizes)
        self.total = sum(sizes)


class _Reducer:
    def __init__(self, sets: Sequence[PointSet], cfg: SameTypeConfig, trace: list | None):
        self.cfg = cfg
        self.trace = trace
        self.rng = np.random.default_rng(cfg.rng_seed)
        pts, members = _stack(sets)
        self.coords = _exact.scaled_coords(pts)
        self.ranks = _exact.lex_ranks(self.coords)
        self.gid = np.concatenate([np.asarray(s.ids, dtype=np.int64) for s in sets])
        # members sorted by point id so candidate indexing is coordinate-free
        self.members = [m[np.argsort(self.gid[m], kind="stable")] for m in members]
        self.sets = sets

    def tensor(self, t: Triple, members=None) -> np.ndarray:
        m = self.members if members is None else members
        return _exact.triple_tensor(self.coords, m[t[0]], m[t[1]], m[t[2]])

    @staticmethod
    def offense(T: np.ndarray) -> int:
        pos = int((T > 0).sum())
        neg = int((T < 0).sum())
        return min(pos, neg) + int((T == 0).sum())

    def ids_key(self, kept) -> tuple:
        return tuple(tuple(sorted(self.gid[k].tolist())) for k in kept)

    def trims(self, t: Triple, T: np.ndarray) -> list[_Move]:
        out = []
        for role, axes in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
            for s in (1, -1):
                mask = np.all(T == s, axis=axes)
                kept = [self.members[i] for i in t]
                kept[role] = kept[role][mask]
                out.append(_Move("trim", tuple(kept), 0, (0, role)))
        return out

    def x_order(self, t: Triple):
        """The triple sorted left-to-right if its sets are x-separated, else None."""
        spans = sorted(
            (int(self.ranks[self.members[i]].min()), int(self.ranks[self.members[i]].max()), pos)
            for pos, i in enumerate(t)
        )
        if spans[0][1] < spans[1][0] and spans[1][1] < spans[2][0]:
            return [s[2] for s in spans]
        return None

    def sandwich_moves(self, t: Triple, order) -> list[_Move]:
        """Lines through one point of each outer set; the middle set goes to one
        open side and the outer sets to the other closed side."""
        left, mid, right = (self.members[t[r]] for r in order)
        pairs = [(a, b) for a in range(len(left)) for b in range(len(right))]
        if len(pairs) > self.cfg.max_candidates:
            pick = self.rng.choice(len(pairs), self.cfg.max_candidates, replace=False)
            pairs = [pairs[i] for i in sorted(pick)]
        p_idx = left[[a for a, _ in pairs]]
        q_idx = right[[b for _, b in pairs]]
        pool = np.concatenate([left, mid, right])
        S = _exact.line_sides(self.coords, p_idx, q_idx, pool)
        nl, nm = len(left), len(mid)
        sl, sm, sr = S[:, :nl], S[:, nl : nl + nm], S[:, nl + nm :]
        best = None
        ties = []
        for sigma in (1, -1):
            kl = (sigma * sl <= 0).sum(1)
            km = (sigma * sm > 0).sum(1)
            kr = (sigma * sr <= 0).sum(1)
            mins = np.minimum(np.minimum(kl, km), kr)
            score = mins * (10 * len(pool) + 1) + kl + km + kr
            top = int(score.max())
            if best is None or top > best:
                best, ties = top, []
            if top == best:
                ties.extend((int(li), sigma) for li in np.flatnonzero(score == top))
        moves = []
        for li, sigma in ties:
            kept_sorted = (
                left[sigma * sl[li] <= 0],
                mid[sigma * sm[li] > 0],
                right[sigma * sr[li] <= 0],
            )
            kept = [None, None, None]
            for r, k in zip(order, kept_sorted):
                kept[r] = k
            moves.append(_Move("sandwich", tuple(kept), 0, (1, li)))
        return moves

    def halving_moves(self, t: Triple) -> list[_Move]:
        out = []
        for u, v, w in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            A = self.sets_view(t[u])
            B = self.sets_view(t[v])
            line = ham_sandwich(A, B)
            sides = {r: self.side_of_line(line, self.members[t[r]]) for r in (u, v, w)}
            for su, sv in itertools.product((1, -1), repeat=2):
                for sw in (0, 1, -1):
                    kept = [None, None, None]
                    kept[u] = self.members[t[u]][su * sides[u] >= 0]
                    kept[v] = self.members[t[v]][sv * sides[v] >= 0]
                    kept[w] = self.members[t[w]] if sw == 0 else self.members[t[w]][sw * sides[w] > 0]
                    if sum(len(k) for k in kept) == sum(len(self.members[i]) for i in t):
                        continue
                    if min(len(k) for k in kept) == 0:
                        continue
                    T = _exact.triple_tensor(self.coords, *kept)
                    out.append(_Move("halving", tuple(kept), self.offense(T), (2, u, v, su, sv, sw)))
        return out

    def sets_view(self, i: int) -> PointSet:
        """Set i in the reducer's integer frame, ids = global indices."""
        m = self.members[i]
        return PointSet(tuple(self._point(g) for g in m), tuple(int(g) for g in m))

    def _point(self, g) -> Point:
        return Point(int(self.coords[g, 0]), int(self.coords[g, 1]))

    def side_of_line(self, line, m) -> np.ndarray:
        # line endpoints live in the integer frame of sets_view
        p = np.array([[int(line.p.x), int(line.p.y)]], dtype=self.coords.dtype)
        q = np.array([[int(line.q.x), int(line.q.y)]], dtype=self.coords.dtype)
        return _exact.orient(p[:, None, :], q[:, None, :], self.coords[m][None, :, :])[0]

    def choose(self, t: Triple, T: np.ndarray) -> _Move:
        floor = self.cfg.min_width
        cands = self.trims(t, T)
        order = self.x_order(t)
        if order is not None:
            cands += self.sandwich_moves(t, order)
        fixes = [c for c in cands if c.offense == 0 and c.min_card >= floor]

        def fix_key(c):
            return (-c.min_card, -c.total, c.order[0], self.ids_key(c.kept))

        best_fix = min(fixes, key=fix_key) if fixes else None
        current_min = min(len(self.members[i]) for i in t)
        if best_fix is not None and (order is not None or 2 * best_fix.min_card >= current_min):
            return best_fix
        halvings = [c for c in self.halving_moves(t) if c.min_card >= floor]
        if halvings:
            best_half = min(halvings, key=lambda c: (c.offense, -c.min_card, -c.total, self.ids_key(c.kept)))
            if best_fix is None or best_half.min_card > best_fix.min_card:
                return best_half
        if best_fix is not None:
            return best_fix
        raise ReductionExhausted(
            f"no move on set triple {t} keeps every set at >= {floor} points "
            f"(sizes {[len(self.members[i]) for i in t]})"
        )

    def run(self) -> list[np.ndarray]:
        r = len(self.members)
        done: set[Triple] = set()
        rounds = 0
        while True:
            offending = None
            for t in itertools.combinations(range(r), 3):
                if t in done:
                    continue
                T = self.tensor(t)
                if self.offense(T) == 0:
                    done.add(t)
                    continue
                offending = (t, T)
                break
            if offending is None:
                return self.members
            if rounds >= self.cfg.max_halving_rounds:
                raise ReductionExhausted(f"round limit {self.cfg.max_halving_rounds} reached")
            t, T = offending
            move = self.choose(t, T)
            for i, k in zip(t, move.kept):
                self.members[i] = k
            rounds += 1
            if move.offense == 0 and self.offense(self.tensor(t)) != 0:
                raise InvariantViolation(f"{move.kind} move left triple {t} offending")
            if self.trace is not None:
                self.trace.append(
                    {
                        "round": rounds,
                        "triple": list(t),
                        "move": move.kind,
                        "sizes": [len(m) for m in self.members],
                    }
                )


def same_type_reduce(
    sets: Sequence[PointSet], cfg: SameTypeConfig = SameTypeConfig(), trace: list | None = None
) -> tuple[list[PointSet], SameTypeCertificate]:
    """Shrink each set so the tuple gains the same-type property.

    Offending set triples are handled in lexicographic order. Each move keeps
    a subset of the three sets of the triple; moves that certainly remove the
    offense are preferred, maximizing the smallest surviving set. Raises
    :class:`ReductionExhausted` rather than returning anything below
    ``cfg.min_width``.
    """
    if any(len(s) == 0 for s in sets):
        raise ValueError("sets must be nonempty")
    pts = [p for s in sets for p in s.points]
    if len(set(pts)) != len(pts):
        raise ValueError("sets must be disjoint")
    if not in_general_position(pts):
        raise DegenerateInput("union of the sets is not in general position")
    if any(len(s) < cfg.min_width for s in sets):
        raise ReductionExhausted("input set already below min_width")
    reducer = _Reducer(sets, cfg, trace)
    members = reducer.run()
    offsets = np.cumsum([0] + [len(s) for s in sets])
    out = []
    for i, s in enumerate(sets):
        local = sorted(int(g) - int(offsets[i]) for g in members[i])
        out.append(s.subset(local))
    cert = verify_same_type(out)
    if cert is None:
        raise InvariantViolation("reducer output failed verify_same_type")
    return out, cert
