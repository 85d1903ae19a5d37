"""Exact integer kernels behind the rational predicates.

Rational coordinates are scaled by the lcm of their denominators so every
orientation becomes an integer determinant. When the scaled magnitudes are
small enough the arrays are int64 (the 2x2 determinant then cannot overflow);
otherwise they fall back to object arrays of Python ints, which are slower but
still exact.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

# |coord| <= 2**30 keeps (dx*dy' - dy*dx') below 2**63.
INT64_SAFE = 1 << 30


def scaled_coords(points: Iterable) -> np.ndarray:
    """Integer (n, 2) array proportional to the given rational points."""
    pts = list(points)
    if not pts:
        return np.zeros((0, 2), dtype=np.int64)
    den = 1
    for p in pts:
        den = math.lcm(den, p.x.denominator, p.y.denominator)
    rows = [(int(p.x * den), int(p.y * den)) for p in pts]
    big = max(max(abs(a), abs(b)) for a, b in rows)
    if big <= INT64_SAFE:
        return np.array(rows, dtype=np.int64)
    arr = np.empty((len(rows), 2), dtype=object)
    for i, (a, b) in enumerate(rows):
        arr[i, 0] = a
        arr[i, 1] = b
    return arr


def orient(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Broadcast orientation sign of (a, b, c); trailing axis holds (x, y)."""
    det = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (
        c[..., 0] - a[..., 0]
    )
    if det.dtype == object:
        return np.vectorize(_sign, otypes=[np.int64])(det)
    return np.sign(det).astype(np.int64)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def triple_tensor(coords: np.ndarray, i: Sequence[int], j: Sequence[int], k: Sequence[int]) -> np.ndarray:
    """Orientation signs for every (a, b, c) in i x j x k, shape (|i|, |j|, |k|)."""
    a = coords[np.asarray(i, dtype=np.intp)][:, None, None, :]
    b = coords[np.asarray(j, dtype=np.intp)][None, :, None, :]
    c = coords[np.asarray(k, dtype=np.intp)][None, None, :, :]
    return orient(a, b, c)


def line_sides(coords: np.ndarray, p_idx: Sequence[int], q_idx: Sequence[int], r_idx: Sequence[int]) -> np.ndarray:
    """Side signs of points r against lines p[t] -> q[t], shape (|lines|, |r|)."""
    p = coords[np.asarray(p_idx, dtype=np.intp)][:, None, :]
    q = coords[np.asarray(q_idx, dtype=np.intp)][:, None, :]
    r = coords[np.asarray(r_idx, dtype=np.intp)][None, :, :]
    return orient(p, q, r)


def has_collinear_triple(coords: np.ndarray) -> bool:
    """True iff some three rows are collinear (O(n^2) canonical directions)."""
    n = len(coords)
    if n < 3:
        return False
    for t in range(n - 2):
        d = coords[t + 1 :] - coords[t]
        dx, dy = d[:, 0], d[:, 1]
        if d.dtype == object:
            keys = set()
            for a, b in zip(dx, dy):
                g = math.gcd(a, b)
                a, b = a // g, b // g
                if a < 0 or (a == 0 and b < 0):
                    a, b = -a, -b
                if (a, b) in keys:
                    return True
                keys.add((a, b))
            continue
        g = np.gcd(dx, dy)
        g[g == 0] = 1
        dx = dx // g
        dy = dy // g
        flip = (dx < 0) | ((dx == 0) & (dy < 0))
        dx = np.where(flip, -dx, dx)
        dy = np.where(flip, -dy, dy)
        packed = np.stack([dx, dy], axis=1)
        if len(np.unique(packed, axis=0)) < len(packed):
            return True
    return False


def lex_ranks(coords: np.ndarray) -> np.ndarray:
    """Rank of each row under lexicographic (x, y) order."""
    order = sorted(range(len(coords)), key=lambda t: (coords[t, 0], coords[t, 1]))
    ranks = np.empty(len(coords), dtype=np.int64)
    ranks[np.asarray(order, dtype=np.intp)] = np.arange(len(coords))
    return ranks
