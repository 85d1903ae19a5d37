"""Deterministic static SVG figures of point sets and certificates."""

from __future__ import annotations

from typing import Sequence

from .families import ConvexBundle, CrossingFamily, NonCrossingFamily, SpokeSet
from .geometry import PointSet

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
SIZE = 600
MARGIN = 30


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class _Frame:
    """Maps plane coordinates into the viewport (y axis pointing up)."""

    def __init__(self, P: PointSet):
        xs = [float(p.x) for p in P.points] or [0.0]
        ys = [float(p.y) for p in P.points] or [0.0]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0) or 1.0
        self.scale = (SIZE - 2 * MARGIN) / span

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return MARGIN + (x - self.x0) * self.scale, SIZE - MARGIN - (y - self.y0) * self.scale


def _clip_line(frame: _Frame, ln) -> tuple[float, float, float, float] | None:
    """Liang-Barsky clip of the infinite line to the viewport."""
    px, py = frame(float(ln.p.x), float(ln.p.y))
    qx, qy = frame(float(ln.q.x), float(ln.q.y))
    dx, dy = qx - px, qy - py
    lo, hi = -1e18, 1e18
    for p, q in ((-dx, px), (dx, SIZE - px), (-dy, py), (dy, SIZE - py)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if lo > hi:
        return None
    return px + lo * dx, py + lo * dy, px + hi * dx, py + hi * dy


def render(P: PointSet, certs: Sequence = (), title: str | None = None) -> str:
    frame = _Frame(P)
    colour: dict[int, str] = {}
    body: list[str] = []
    for cert in certs:
        parts = None
        if isinstance(cert, (ConvexBundle, NonCrossingFamily)):
            parts = cert.parts
        elif isinstance(cert, CrossingFamily) and cert.sides is not None:
            parts = cert.sides
        if parts is not None:
            for c, S in enumerate(parts):
                for i in S.ids:
                    colour[i] = PALETTE[c % len(PALETTE)]
        if isinstance(cert, CrossingFamily):
            for s in cert.segments:
                x1, y1 = frame(float(s.a.x), float(s.a.y))
                x2, y2 = frame(float(s.b.x), float(s.b.y))
                body.append(
                    f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                    'stroke="#333333" stroke-width="1.5"/>'
                )
        if isinstance(cert, SpokeSet):
            for ln in cert.lines:
                seg = _clip_line(frame, ln)
                if seg is not None:
                    x1, y1, x2, y2 = seg
                    body.append(
                        f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                        'stroke="#888888" stroke-width="1" stroke-dasharray="4 3"/>'
                    )
    for i, p in zip(P.ids, P.points):
        cx, cy = frame(float(p.x), float(p.y))
        fill = colour.get(i, "#000000")
        body.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4" fill="{fill}"/>')
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>',
    ]
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        head.append(f'<text x="{MARGIN}" y="20" font-family="sans-serif" font-size="14">{safe}</text>')
    return "\n".join(head + body + ["</svg>"]) + "\n"
