"""Beta-neighborhoods of a generator pair and their membership predicates.

Two families are supported, both built from at most two discs:

* ``lune``: for beta < 1 the intersection of the two discs of radius
  d/(2 beta) having v1 v2 as a chord; for beta >= 1 the intersection of the
  two discs of radius beta d/2 centred at (1 - beta/2) v1 + (beta/2) v2 and
  (beta/2) v1 + (1 - beta/2) v2.
* ``circle``: identical to the lune for beta < 1; for beta >= 1 the union of
  the two discs of radius beta d/2 having v1 v2 as a chord.

At beta = 1 both collapse to the disc with diameter v1 v2.

The segment predicate clips the segment against each disc (a quadratic
inequality in the segment parameter) and combines the parameter intervals,
so no sampling resolution is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .geom import EPS_GEOM, CoincidentPointsError, Disc, GeometryError, Point, Segment

LUNE = "lune"
CIRCLE = "circle"
OPEN = "open"
CLOSED = "closed"

SINGLE = "single"
INTERSECTION = "intersection"
UNION = "union"

VARIANTS = (LUNE, CIRCLE)
CLOSURES = (OPEN, CLOSED)


@dataclass(frozen=True)
class BetaSpec:
    """Skeleton parameter.

    ``closure=None`` picks the conventional default: closed for beta <= 1
    (the Gabriel graph is the closed 1-skeleton) and open for beta > 1 (the
    RNG is the open 2-skeleton).
    """

    beta: float
    variant: str = LUNE
    closure: Optional[str] = field(default=None)

    def __post_init__(self):
        b = float(self.beta)
        if not (math.isfinite(b) and b > 0):
            raise GeometryError(f"beta must be finite and positive, got {self.beta!r}")
        object.__setattr__(self, "beta", b)
        if self.variant not in VARIANTS:
            raise GeometryError(f"unknown variant {self.variant!r}")
        if self.closure is None:
            object.__setattr__(self, "closure", CLOSED if b <= 1.0 else OPEN)
        elif self.closure not in CLOSURES:
            raise GeometryError(f"unknown closure {self.closure!r}")

    @property
    def closed(self) -> bool:
        return self.closure == CLOSED


@dataclass(frozen=True)
class Neighborhood:
    combine: str
    discs: tuple[Disc, ...]
    generators: tuple[Point, Point]
    spec: BetaSpec

    @property
    def tolerance_radii(self) -> tuple[float, ...]:
        return tuple(_tol_radius(d.radius, self.spec.closed, EPS_GEOM) for d in self.discs)


def delta_of_beta(spec: BetaSpec) -> float:
    """Inscribed angle under which boundary points see the generator chord.

    Valid for lune neighborhoods with beta <= 1 and circle neighborhoods with
    beta >= 1.
    """
    b = spec.beta
    if b == 1.0:
        return math.pi / 2
    if spec.variant == LUNE:
        if b > 1.0:
            raise GeometryError("inscribed angle of a lune is only constant for beta <= 1")
        return math.pi - math.asin(b)
    if b < 1.0:
        raise GeometryError("circle-based inscribed angle requires beta >= 1")
    return math.asin(1.0 / b)


def disc_params(v1x: float, v1y: float, v2x: float, v2y: float, beta: float, circle: bool):
    """Combine mode and raw (cx, cy, r) discs of the neighborhood of (v1, v2).

    For the two-disc cases the first disc is the one whose boundary passes
    through v1.
    """
    ex, ey = v2x - v1x, v2y - v1y
    d = math.hypot(ex, ey)
    if beta == 1.0:
        return SINGLE, ((0.5 * (v1x + v2x), 0.5 * (v1y + v2y), 0.5 * d),)
    if beta < 1.0 or circle:
        # chord discs; centre offset is linear in (v1, v2)
        if beta < 1.0:
            k = 0.5 * math.sqrt(1.0 / (beta * beta) - 1.0)
            r = d / (2.0 * beta)
        else:
            k = 0.5 * math.sqrt(beta * beta - 1.0)
            r = 0.5 * beta * d
        mx, my = 0.5 * (v1x + v2x), 0.5 * (v1y + v2y)
        ox, oy = -k * ey, k * ex
        discs = ((mx + ox, my + oy, r), (mx - ox, my - oy, r))
        return (INTERSECTION if beta < 1.0 else UNION), discs
    h = 0.5 * beta
    r = h * d
    return INTERSECTION, (
        ((1.0 - h) * v1x + h * v2x, (1.0 - h) * v1y + h * v2y, r),
        (h * v1x + (1.0 - h) * v2x, h * v1y + (1.0 - h) * v2y, r),
    )


def make_neighborhood(v1: Sequence[float], v2: Sequence[float], spec: BetaSpec) -> Neighborhood:
    if math.hypot(v2[0] - v1[0], v2[1] - v1[1]) <= EPS_GEOM:
        raise CoincidentPointsError("neighborhood generators coincide")
    combine, raw = disc_params(v1[0], v1[1], v2[0], v2[1], spec.beta, spec.variant == CIRCLE)
    discs = tuple(Disc(Point(cx, cy), r) for cx, cy, r in raw)
    return Neighborhood(combine, discs, (Point(*v1), Point(*v2)), spec)


def _tol_radius(r: float, closed: bool, eps: float) -> float:
    return r + eps if closed else r - eps


def clip_segment_disc(ax, ay, bx, by, cx, cy, R):
    """Parameter interval [lo, hi] of segment ab inside the disc (c, R), or None."""
    if R < 0.0:
        return None
    dx, dy = bx - ax, by - ay
    fx, fy = ax - cx, ay - cy
    A = dx * dx + dy * dy
    if A == 0.0:
        return (0.0, 1.0) if fx * fx + fy * fy <= R * R else None
    u0 = -(fx * dx + fy * dy) / A
    hx, hy = fx + u0 * dx, fy + u0 * dy
    disc = R * R - (hx * hx + hy * hy)
    if disc < 0.0:
        return None
    w = math.sqrt(disc / A)
    lo = u0 - w if u0 - w > 0.0 else 0.0
    hi = u0 + w if u0 + w < 1.0 else 1.0
    return (lo, hi) if lo <= hi else None


def segment_hits_discs(combine: str, discs, closed: bool, eps: float, ax, ay, bx, by) -> bool:
    """Float-level core of :func:`segment_intersects_nbhd` on raw discs."""
    if combine == INTERSECTION:
        cx, cy, r = discs[0]
        i1 = clip_segment_disc(ax, ay, bx, by, cx, cy, _tol_radius(r, closed, eps))
        if i1 is None:
            return False
        cx, cy, r = discs[1]
        i2 = clip_segment_disc(ax, ay, bx, by, cx, cy, _tol_radius(r, closed, eps))
        if i2 is None:
            return False
        return max(i1[0], i2[0]) <= min(i1[1], i2[1])
    for cx, cy, r in discs:
        if clip_segment_disc(ax, ay, bx, by, cx, cy, _tol_radius(r, closed, eps)) is not None:
            return True
    return False


def _in_disc(p, d: Disc, closed: bool) -> bool:
    dd = math.hypot(p[0] - d.center.x, p[1] - d.center.y)
    R = _tol_radius(d.radius, closed, EPS_GEOM)
    return dd <= R if closed else dd < R


def nbhd_contains(N: Neighborhood, p: Sequence[float]) -> bool:
    closed = N.spec.closed
    hits = [_in_disc(p, d, closed) for d in N.discs]
    if N.combine == UNION:
        return any(hits)
    return all(hits)


def disc_contains(d: Disc, p: Sequence[float], closed: bool) -> bool:
    return _in_disc(p, d, closed)


def segment_intersects_disc(d: Disc, s: Segment, closed: bool) -> bool:
    R = _tol_radius(d.radius, closed, EPS_GEOM)
    return clip_segment_disc(s.a.x, s.a.y, s.b.x, s.b.y, d.center.x, d.center.y, R) is not None


def segment_intersects_nbhd(N: Neighborhood, s: Segment) -> bool:
    raw = tuple((d.center.x, d.center.y, d.radius) for d in N.discs)
    return segment_hits_discs(N.combine, raw, N.spec.closed, EPS_GEOM, s.a.x, s.a.y, s.b.x, s.b.y)
