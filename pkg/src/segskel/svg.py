"""Static SVG rendering of a scene and a graph on it."""

from __future__ import annotations

import math
from typing import Optional

from .geom import SegmentSet, param_point
from .graph import SkeletonGraph
from .neighborhoods import UNION, BetaSpec, make_neighborhood

_SIZE = 640.0
_MARGIN = 24.0


def _f(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".")


def _circle_meet(c1, r1, c2, r2):
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d == 0.0 or d > r1 + r2 or d < abs(r1 - r2):
        return None
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    mx, my = c1[0] + a * dx / d, c1[1] + a * dy / d
    return (mx - h * dy / d, my + h * dx / d), (mx + h * dy / d, my - h * dx / d)


def _arc(c, r, p, q, toward) -> str:
    """Arc of circle (c, r) from p to q passing on the side of ``toward``."""
    ang = lambda z: math.atan2(z[1] - c[1], z[0] - c[0])  # noqa: E731
    a0, a1, am = ang(p), ang(q), ang(toward)
    ccw_span = (a1 - a0) % (2.0 * math.pi)
    via_ccw = (am - a0) % (2.0 * math.pi) < ccw_span
    span = ccw_span if via_ccw else 2.0 * math.pi - ccw_span
    large = 1 if span > math.pi else 0
    sweep = 1 if via_ccw else 0
    return f"A {_f(r)} {_f(r)} 0 {large} {sweep} {_f(q[0])} {_f(q[1])}"


def neighborhood_path(N) -> str:
    """SVG path data for the boundary of a one- or two-disc neighborhood."""
    if len(N.discs) == 1:
        (c, r), = N.discs
        return _full_circle(c, r)
    (c1, r1), (c2, r2) = N.discs
    meet = _circle_meet(c1, r1, c2, r2)
    if meet is None:
        return _full_circle(c1, r1) + " " + _full_circle(c2, r2)
    p, q = meet
    d = math.hypot(c2[0] - c1[0], c2[1] - c1[1])
    u = ((c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d)
    s = -1.0 if N.combine == UNION else 1.0
    # the lens keeps each circle's arc facing the other centre, the union the opposite arcs
    t1 = (c1[0] + s * r1 * u[0], c1[1] + s * r1 * u[1])
    t2 = (c2[0] - s * r2 * u[0], c2[1] - s * r2 * u[1])
    return f"M {_f(p[0])} {_f(p[1])} {_arc(c1, r1, p, q, t1)} {_arc(c2, r2, q, p, t2)} Z"


def _full_circle(c, r) -> str:
    x, y = c
    return (
        f"M {_f(x + r)} {_f(y)} A {_f(r)} {_f(r)} 0 1 1 {_f(x - r)} {_f(y)} "
        f"A {_f(r)} {_f(r)} 0 1 1 {_f(x + r)} {_f(y)} Z"
    )


def render_svg(S: SegmentSet, G: SkeletonGraph, spec: Optional[BetaSpec]) -> str:
    """Sites in black, edges in blue between witness points, witness neighborhoods in gray.

    Edges without a witness (DT) are drawn between site midpoints.
    """
    xs = [c for s in S for c in (s.a.x, s.b.x)]
    ys = [c for s in S for c in (s.a.y, s.b.y)]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin) or 1.0
    scale = (_SIZE - 2.0 * _MARGIN) / span
    stroke = 1.5 / scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(_SIZE)}" height="{_f(_SIZE)}" '
        f'viewBox="0 0 {_f(_SIZE)} {_f(_SIZE)}">',
        f'<g transform="matrix({_f(scale)} 0 0 {_f(-scale)} {_f(_MARGIN - xmin * scale)} {_f(_SIZE - _MARGIN + ymin * scale)})">',
    ]
    outlines, edges = [], []
    for i, j in G:
        w = G.witness(i, j)
        if w is None:
            p, q = param_point(S[i], 0.5), param_point(S[j], 0.5)
        else:
            p, q = param_point(S[i], w.t1), param_point(S[j], w.t2)
            if spec is not None:
                N = make_neighborhood(p, q, spec)
                outlines.append(
                    f'<path d="{neighborhood_path(N)}" fill="none" stroke="gray" stroke-width="{_f(stroke / 2)}"/>'
                )
        edges.append(
            f'<line x1="{_f(p.x)}" y1="{_f(p.y)}" x2="{_f(q.x)}" y2="{_f(q.y)}" '
            f'stroke="blue" stroke-width="{_f(stroke)}"/>'
        )
    sites = [
        f'<line x1="{_f(s.a.x)}" y1="{_f(s.a.y)}" x2="{_f(s.b.x)}" y2="{_f(s.b.y)}" '
        f'stroke="black" stroke-width="{_f(2 * stroke)}" stroke-linecap="round"/>'
        for s in S
    ]
    out += outlines + edges + sites + ["</g>", "</svg>", ""]
    return "\n".join(out)
