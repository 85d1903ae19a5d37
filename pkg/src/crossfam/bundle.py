"""Convex bundle or non-crossing family: the seven-strip dichotomy pipeline.

Outline of :func:`find_bundle_or_noncrossing`:

1. cut P by vertical lines into 7 near-equal strips;
2. give the 7-tuple the same-type property;
3. if a representative 7-tuple is not convex, some 4 sets form a
   non-crossing family (one representative lies inside the others' triangle);
4. otherwise split the indices into a cap class and a cup class sharing the
   two extreme strips; one has 5 members (reflect y for the cup case);
5. for k >= 6 cut the middle cap set into k vertical strips and assemble
   Q_1..Q_k, then grow a cap R_1, R_2, ... in the zig-zag order pi, where each
   new set lands between the two most recent ones;
6. each extension either keeps the cap, or yields a non-crossing family
   among (R_1, R_2, R_{l-1}, R_l, R_{l+1}).

Everything runs on a sheared copy of P with distinct x-coordinates; the
output is mapped back to P by point id. Each returned certificate is checked
by its verifier before it leaves this module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateInput,
    InsufficientPoints,
    InvariantViolation,
    ReductionExhausted,
)
from .families import (
    ConvexBundle,
    CrossingFamily,
    NonCrossingFamily,
    verify_convex_bundle,
    verify_crossing_family,
    verify_noncrossing_family,
)
from .geometry import (
    Point,
    PointSet,
    convex_hull,
    convex_position,
    in_general_position,
    is_cap,
    orientation,
    point_in_triangle,
    reflect_vertical,
    shear_to_distinct_x,
    vertical_split,
)
from .sametype import SameTypeCertificate, SameTypeConfig, same_type_reduce, verify_same_type


@dataclass(frozen=True)
class BundleRunConfig:
    k: int
    m: int
    # practical stand-in for the (astronomical) constant relating n to k*m
    c_eff: Fraction = Fraction(32)
    same_type: SameTypeConfig = field(default_factory=SameTypeConfig)
    rng_seed: int = 0
    # sample representative tuples and assert the growing-cap invariant
    check_invariants: bool = False

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be >= 1")
        object.__setattr__(self, "c_eff", Fraction(self.c_eff))
        if self.c_eff <= 0:
            raise ValueError("c_eff must be positive")


@dataclass(frozen=True)
class DichotomyResult:
    """Exactly one certified outcome plus the ordered stage log."""

    bundle: ConvexBundle | None = None
    noncrossing: NonCrossingFamily | None = None
    crossing: CrossingFamily | None = None
    trace: tuple = ()
    # for crossing results: the bundle the family was assembled from
    support: ConvexBundle | None = None

    def __post_init__(self):
        present = [x for x in (self.bundle, self.noncrossing, self.crossing) if x is not None]
        if len(present) != 1:
            raise ValueError("a dichotomy result holds exactly one certificate")

    @property
    def kind(self) -> str:
        if self.bundle is not None:
            return "bundle"
        return "noncrossing" if self.noncrossing is not None else "crossing"


def pi_permutation(k: int) -> tuple[int, ...]:
    """Zig-zag order 1, k, 2, k-1, ... (1-based)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return tuple((i + 1) // 2 if i % 2 else k + 1 - i // 2 for i in range(1, k + 1))


def _rep(S: PointSet) -> Point:
    return S.by_id[min(S.ids)]


def _trim(S: PointSet, m: int) -> PointSet:
    if len(S) < m:
        raise InsufficientPoints(f"part of size {len(S)} is below the width {m}")
    return S.select_ids(sorted(S.ids)[:m])


def extract_caratheodory_noncrossing(sets: Sequence[PointSet], m: int) -> NonCrossingFamily:
    """Non-crossing family of size m from a same-type tuple whose
    representatives are not in convex position.

    The first (lexicographic) quadruple of sets with a representative inside
    the triangle of the other three is used; that set becomes P4.
    """
    if len(sets) < 4:
        raise ValueError("need at least 4 sets")
    reps = [_rep(S) for S in sets]
    for quad in itertools.combinations(range(len(sets)), 4):
        for inner in quad:
            outer = [t for t in quad if t != inner]
            a, b, c = (reps[t] for t in outer)
            if orientation(a, b, c) != 0 and point_in_triangle(reps[inner], a, b, c):
                parts = [_trim(sets[t], m) for t in outer] + [_trim(sets[inner], m)]
                N = NonCrossingFamily(*parts)
                if not verify_noncrossing_family(N):
                    raise InvariantViolation("extracted non-crossing family failed verification")
                return N
    raise ValueError("every representative quadruple is in convex position")


class _Run:
    def __init__(self, P: PointSet, cfg: BundleRunConfig):
        self.P = P
        self.cfg = cfg
        self.trace: list[dict] = []
        self.rng = random.Random(cfg.rng_seed)

    def log(self, stage: str, **data):
        self.trace.append({"stage": stage, **data})

    def reduce(self, sets: list[PointSet], stage: str) -> tuple[list[PointSet], SameTypeCertificate]:
        st = self.cfg.same_type
        scfg = SameTypeConfig(
            min_width=self.cfg.m,
            max_halving_rounds=st.max_halving_rounds,
            rng_seed=st.rng_seed,
            max_candidates=st.max_candidates,
        )
        try:
            out, cert = same_type_reduce(sets, scfg)
        except ReductionExhausted as e:
            self.log(stage, before=[len(s) for s in sets], exhausted=True)
            raise InsufficientPoints(f"{stage}: {e}") from e
        self.log(stage, before=[len(s) for s in sets], after=[len(s) for s in out])
        return out, cert

    # results are built on working coordinates and mapped back by id
    def back(self, S: PointSet) -> PointSet:
        return self.P.select_ids(S.ids)

    def noncrossing(self, N: NonCrossingFamily) -> DichotomyResult:
        M = NonCrossingFamily(*(self.back(S) for S in N.parts))
        if not verify_noncrossing_family(M):
            raise InvariantViolation("non-crossing family failed verification")
        self.log("result", kind="noncrossing", parts=[list(S.ids) for S in M.parts])
        return DichotomyResult(noncrossing=M, trace=tuple(self.trace))

    def bundle(self, parts: list[PointSet]) -> DichotomyResult:
        parts = [self.back(S) for S in parts]
        if any(len(S) < self.cfg.m for S in parts):
            raise InsufficientPoints("bundle part below the requested width")
        cert = verify_same_type(parts)
        B = ConvexBundle(tuple(parts), cert) if cert is not None else None
        if B is None or not verify_convex_bundle(B):
            raise InvariantViolation("convex bundle failed verification")
        self.log("result", kind="bundle", sizes=[len(S) for S in parts])
        return DichotomyResult(bundle=B, trace=tuple(self.trace))

    def check_cap(self, R: dict[int, PointSet], ell: int, samples: int = 100):
        order = sorted(range(1, ell + 1), key=lambda i: _rep(R[i]))
        for _ in range(samples):
            pts = [R[i].points[self.rng.randrange(len(R[i]))] for i in order]
            if not is_cap(pts):
                raise InvariantViolation(f"sets R_1..R_{ell} do not form a cap")

    def run(self) -> DichotomyResult:
        P, k, m = self.P, self.cfg.k, self.cfg.m
        n = len(P)
        if not (P.general_position or in_general_position(P)):
            raise DegenerateInput("input is not in general position")
        W = shear_to_distinct_x(P)
        self.log("input", n=n, k=k, m=m, sheared=W is not P)

        hull = convex_hull(W)
        if len(hull) == n:
            return self.convex_input(W, hull)
        if k <= 2:
            w = n // k
            if w < m:
                raise InsufficientPoints(f"{n} points cannot give {k} parts of width {m}")
            parts = vertical_split(W, [w] * k + [n - w * k])[:k]
            self.log("small-k", sizes=[len(S) for S in parts])
            return self.bundle(parts)
        if n < 7:
            if m > 1:
                raise InsufficientPoints("fewer than 7 points")
            singles = [W.subset([i]) for i in range(n)]
            return self.noncrossing(extract_caratheodory_noncrossing(singles, 1))

        q, r = divmod(n, 7)
        strips = vertical_split(W, [q + 1] * r + [q] * (7 - r))
        self.log("split", sizes=[len(S) for S in strips])
        B, _ = self.reduce(strips, "same-type-7")

        reps = [_rep(S) for S in B]
        if not convex_position(reps):
            self.log("seven-tuple", convex=False)
            return self.noncrossing(extract_caratheodory_noncrossing(B, m))

        # A: strips whose representative lies above the chord p1 p7 (cap side)
        A = [0] + [i for i in range(1, 6) if orientation(reps[0], reps[i], reps[6]) < 0] + [6]
        U = [0] + [i for i in range(1, 6) if i not in A] + [6]
        reflected = len(A) < 5
        if reflected:
            B = [reflect_vertical(S) for S in B]
            A, U = U, A
        self.log("cap-cup", cap=[i + 1 for i in A], cup=[i + 1 for i in U], reflected=reflected)
        a = A[:5]
        if not is_cap([_rep(B[i]) for i in a]):
            raise InvariantViolation("cap classification disagrees with is_cap")

        if k <= 5:
            return self.bundle([B[i] for i in a[:k]])
        return self.grow_cap([B[i] for i in a])

    def convex_input(self, W: PointSet, hull: list[Point]) -> DichotomyResult:
        """Points in convex position: k consecutive hull arcs form a bundle."""
        n, k, m = len(W), self.cfg.k, self.cfg.m
        w = n // k
        if w < m:
            raise InsufficientPoints(f"{n} convex points cannot give {k} arcs of width {m}")
        idx = [W.index_of[p] for p in hull]
        parts = [W.subset(sorted(idx[j * w : (j + 1) * w])) for j in range(k)]
        self.log("convex-input", sizes=[len(S) for S in parts])
        return self.bundle(parts)

    def grow_cap(self, caps: list[PointSet]) -> DichotomyResult:
        k, m = self.cfg.k, self.cfg.m
        mid = caps[2].sorted_by_x()
        w = len(mid) // k
        self.log("middle-strips", size=len(mid), strip=w)
        if w < m:
            raise InsufficientPoints(f"middle cap set of size {len(mid)} cannot give {k} strips of width {m}")
        Q = {1: caps[0], 2: caps[1], k - 1: caps[3], k: caps[4]}
        for j in range(3, k - 1):
            Q[j] = mid.subset(range((j - 1) * w, j * w))
        pi = pi_permutation(k)
        R = {i: Q[pi[i - 1]] for i in range(1, 6)}
        # x-order of R_i is the order of pi(i)
        xkey = lambda i: pi[i - 1]  # noqa: E731
        if self.cfg.check_invariants:
            self.check_cap(R, 5)

        for ell in range(5, k):
            R[ell + 1] = Q[pi[ell]]
            window = sorted(range(ell - 3, ell + 2), key=xkey)
            reduced, cert = self.reduce([R[i] for i in window], f"same-type-window-{ell}")
            for i, S in zip(window, reduced):
                R[i] = S
            reps = [_rep(S) for S in reduced]
            if not convex_position(reps):
                self.log("window", ell=ell, convex=False)
                return self.noncrossing(extract_caratheodory_noncrossing(reduced, m))
            pos = {i: t for t, i in enumerate(window)}
            left, right = sorted((ell - 1, ell), key=xkey)
            extends = cert.sign(pos[left], pos[ell + 1], pos[right]) < 0
            self.log("extend", ell=ell, extends=extends)
            if not extends:
                tail = sorted([1, 2, ell - 1, ell, ell + 1], key=xkey)
                reduced, _ = self.reduce([R[i] for i in tail], f"same-type-failure-{ell}")
                if convex_position([_rep(S) for S in reduced]):
                    raise InvariantViolation("failure-branch representatives are in convex position")
                return self.noncrossing(extract_caratheodory_noncrossing(reduced, m))
            if self.cfg.check_invariants:
                self.check_cap(R, ell + 1)
        return self.bundle([R[i] for i in sorted(R, key=xkey)])


def find_bundle_or_noncrossing(P: PointSet, cfg: BundleRunConfig) -> DichotomyResult:
    """Convex bundle of size cfg.k and width >= cfg.m, or a non-crossing
    family of size cfg.m. Raises :class:`InsufficientPoints` when the
    instance is too small for the reductions to keep width m."""
    return _Run(P, cfg).run()


def verify_result(result: DichotomyResult, P: PointSet) -> bool:
    if result.bundle is not None:
        return verify_convex_bundle(result.bundle)
    if result.noncrossing is not None:
        return verify_noncrossing_family(result.noncrossing)
    return verify_crossing_family(result.crossing, P)
