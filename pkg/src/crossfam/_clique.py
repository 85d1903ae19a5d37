"""Segment crossing graphs and a bitset branch-and-bound maximum clique.

A crossing family is exactly a clique in the graph whose vertices are
segments and whose edges join properly crossing pairs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _exact
from .errors import OracleTimeout


def crossing_matrix(coords: np.ndarray, segs: Sequence[tuple[int, int]]) -> np.ndarray:
    """Boolean (s, s) matrix: segments (by endpoint row) cross properly.

    Shared endpoints give a zero orientation and therefore never count.
    """
    if not segs:
        return np.zeros((0, 0), dtype=bool)
    s = np.asarray(segs, dtype=np.intp)
    a = coords[s[:, 0]]
    b = coords[s[:, 1]]
    A, B = a[:, None, :], b[:, None, :]
    C, D = a[None, :, :], b[None, :, :]
    o1 = _exact.orient(A, B, C)
    o2 = _exact.orient(A, B, D)
    o3 = _exact.orient(C, D, A)
    o4 = _exact.orient(C, D, B)
    return (o1 * o2 < 0) & (o3 * o4 < 0)


@dataclass
class CliqueResult:
    vertices: list[int]
    nodes: int
    optimal: bool


def max_clique(
    adj_matrix: np.ndarray,
    max_nodes: int | None = None,
    timeout: float | None = None,
) -> CliqueResult:
    """Exact maximum clique (greedy-coloring bound, descending-degree order).

    Raises :class:`OracleTimeout` carrying the best clique so far when the
    node or time budget runs out.
    """
    n = len(adj_matrix)
    if n == 0:
        return CliqueResult([], 0, True)
    deg = adj_matrix.sum(axis=1)
    order = sorted(range(n), key=lambda v: (-int(deg[v]), v))
    pos = {v: i for i, v in enumerate(order)}
    # bit i stands for order[i], so low bits are high-degree vertices
    adj = [0] * n
    for v in range(n):
        bits = 0
        for u in np.flatnonzero(adj_matrix[v]):
            bits |= 1 << pos[int(u)]
        adj[pos[v]] = bits

    # greedy initial clique in degree order
    best: list[int] = []
    cand = (1 << n) - 1
    while cand:
        v = (cand & -cand).bit_length() - 1
        best.append(v)
        cand &= adj[v]

    nodes = 0
    deadline = None if timeout is None else time.monotonic() + timeout

    def colour_classes(cand: int) -> list[tuple[int, int]]:
        out = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            q = rest
            while q:
                v = (q & -q).bit_length() - 1
                out.append((v, colour))
                rest &= ~(1 << v)
                q &= ~adj[v] & ~(1 << v)
        return out

    def expand(cur: list[int], cand: int):
        nonlocal best, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _Stop
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _Stop
        if not cand:
            if len(cur) > len(best):
                best = list(cur)
            return
        for v, colour in reversed(colour_classes(cand)):
            if len(cur) + colour <= len(best):
                return
            cur.append(v)
            expand(cur, cand & adj[v])
            cur.pop()
            cand &= ~(1 << v)

    try:
        expand([], (1 << n) - 1)
    except _Stop:
        raise OracleTimeout(
            "clique search budget exhausted", best=sorted(order[v] for v in best), nodes=nodes
        ) from None
    return CliqueResult(sorted(order[v] for v in best), nodes, True)


class _Stop(Exception):
    pass
