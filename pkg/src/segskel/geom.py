"""Floating-point plane primitives: points, segments, discs and input validation.

All coordinates are doubles.  A single absolute tolerance ``EPS_GEOM`` is used
for coincidence, collinearity and disjointness decisions; scenes are expected
to live at unit scale (the CLI can normalize them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

EPS_GEOM = 1e-9


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class CoincidentPointsError(GeometryError):
    pass


class DegenerateSegmentError(GeometryError):
    pass


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point

    @classmethod
    def from_coords(cls, x1: float, y1: float, x2: float, y2: float) -> "Segment":
        return cls(Point(float(x1), float(y1)), Point(float(x2), float(y2)))

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    @property
    def direction(self) -> Point:
        return Point(self.b.x - self.a.x, self.b.y - self.a.y)

    def coords(self) -> tuple[float, float, float, float]:
        return (self.a.x, self.a.y, self.b.x, self.b.y)


class Disc(NamedTuple):
    center: Point
    radius: float


@dataclass(frozen=True)
class Violation:
    """First general-position violation found in a segment set."""

    kind: str  # "degenerate" | "disjointness" | "collinear"
    indices: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class SegmentSet:
    """Ordered sites with the tolerance used to judge them.

    ``allow_degenerate`` enables point-site mode: sites shorter than the
    tolerance are accepted and collinearity is only checked between endpoints
    of three distinct sites.
    """

    sites: tuple[Segment, ...]
    eps: float = EPS_GEOM
    allow_degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(_as_segment(s) for s in self.sites))
        if not self.allow_degenerate:
            for k, s in enumerate(self.sites):
                if s.length <= self.eps:
                    raise DegenerateSegmentError(f"site {k} has zero length")

    def __len__(self) -> int:
        return len(self.sites)

    def __getitem__(self, k: int) -> Segment:
        return self.sites[k]

    def __iter__(self):
        return iter(self.sites)

    def as_array(self):
        import numpy as np

        return np.array([s.coords() for s in self.sites], dtype=np.float64).reshape(-1, 4)

    def replace_sites(self, sites: Iterable[Segment]) -> "SegmentSet":
        return SegmentSet(tuple(sites), self.eps, self.allow_degenerate)


def _as_segment(s) -> Segment:
    if isinstance(s, Segment):
        return Segment(Point(*s.a), Point(*s.b))
    if len(s) == 4:
        return Segment.from_coords(*s)
    a, b = s
    return Segment(Point(float(a[0]), float(a[1])), Point(float(b[0]), float(b[1])))


def cross(ux: float, uy: float, vx: float, vy: float) -> float:
    return ux * vy - uy * vx


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def param_point(s: Segment, t: float) -> Point:
    """Point a + t(b - a) on the supporting line of ``s``."""
    if t == 0.0:
        return s.a
    if t == 1.0:
        return s.b
    return Point(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y))


def angle_at(v: Sequence[float], a: Sequence[float], b: Sequence[float], eps: float = EPS_GEOM) -> float:
    """Unsigned angle avb in [0, pi]."""
    ux, uy = a[0] - v[0], a[1] - v[1]
    wx, wy = b[0] - v[0], b[1] - v[1]
    if math.hypot(ux, uy) <= eps or math.hypot(wx, wy) <= eps:
        raise CoincidentPointsError("angle vertex coincides with an arm point")
    return math.atan2(abs(cross(ux, uy, wx, wy)), ux * wx + uy * wy)


def homothety_segment(center: Sequence[float], ratio: float, s: Segment) -> Segment:
    if not ratio > 0:
        raise GeometryError(f"homothety ratio must be positive, got {ratio}")
    if ratio == 1.0:
        return s
    cx, cy = center[0], center[1]

    def h(p: Point) -> Point:
        return Point(cx + ratio * (p.x - cx), cy + ratio * (p.y - cy))

    return Segment(h(s.a), h(s.b))


def closest_param(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> float:
    """Parameter in [0, 1] of the point of segment ab closest to p."""
    dx, dy = bx - ax, by - ay
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return 0.0
    u = ((px - ax) * dx + (py - ay) * dy) / dd
    return 0.0 if u < 0.0 else 1.0 if u > 1.0 else u


def dist_point_segment_xy(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> float:
    u = closest_param(px, py, ax, ay, bx, by)
    return math.hypot(ax + u * (bx - ax) - px, ay + u * (by - ay) - py)


def dist_point_segment(p: Sequence[float], s: Segment) -> float:
    return dist_point_segment_xy(p[0], p[1], s.a.x, s.a.y, s.b.x, s.b.y)


def dist_point_line(p: Sequence[float], s: Segment) -> float:
    """Distance from ``p`` to the supporting line P(s)."""
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    return abs(cross(dx, dy, p[0] - s.a.x, p[1] - s.a.y)) / math.hypot(dx, dy)


def _orient(a, b, c) -> float:
    return cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])


def segments_distance(s: Segment, u: Segment) -> float:
    o1, o2 = _orient(s.a, s.b, u.a), _orient(s.a, s.b, u.b)
    o3, o4 = _orient(u.a, u.b, s.a), _orient(u.a, u.b, s.b)
    if ((o1 > 0 > o2) or (o1 < 0 < o2)) and ((o3 > 0 > o4) or (o3 < 0 < o4)):
        return 0.0
    return min(
        dist_point_segment(s.a, u),
        dist_point_segment(s.b, u),
        dist_point_segment(u.a, s),
        dist_point_segment(u.b, s),
    )


def _collinear(p, q, r, eps: float) -> bool:
    # height over the longest side of the triangle
    longest = max(dist(p, q), dist(q, r), dist(p, r))
    if longest <= eps:
        return True
    return abs(_orient(p, q, r)) / longest <= eps


def validate_general_position(S: SegmentSet) -> Optional[Violation]:
    """Return the first violation of disjointness / non-collinearity, or None."""
    eps = S.eps
    for k, s in enumerate(S.sites):
        if s.length <= eps and not S.allow_degenerate:
            return Violation("degenerate", (k,), f"site {k} has zero length")
    for i, j in combinations(range(len(S)), 2):
        if segments_distance(S[i], S[j]) <= eps:
            return Violation("disjointness", (i, j), f"sites {i} and {j} intersect")
    ends = [(k, e) for k, s in enumerate(S.sites) for e in (s.a, s.b)]
    for (i, p), (j, q), (k, r) in combinations(ends, 3):
        if i == j == k:
            continue
        if S.allow_degenerate and len({i, j, k}) < 3:
            continue
        if _collinear(p, q, r, eps):
            idx = tuple(sorted({i, j, k}))
            return Violation(
                "collinear",
                idx,
                f"endpoints {tuple(p)}, {tuple(q)}, {tuple(r)} of sites {idx} are collinear",
            )
    return None


class InvalidInputError(GeometryError):
    """Raised when a segment set violates general position."""

    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


def require_general_position(S: SegmentSet) -> None:
    v = validate_general_position(S)
    if v is not None:
        raise InvalidInputError(v)
