"""Ray-refraction algebra for blocked generator pairs.

A ray is shot from v1 = q1(t1) on P(s1) to v = q(t) on P(s), where it turns
so that the angle v1 v v2 equals ``delta`` and continues until it meets P(s2)
at q2(t2).  Writing the ray vector as

    w(t) = [A1 t + B1 t1 + C1,  A2 t + B2 t1 + C2]

and the rotated vector as ``R w = [D t + E t1 + F, G t + H t1 + I]``, equating
the coordinates of q2(t2) and v + z R w gives

    z  = (J t + K t2 + L) / (D t + E t1 + F)
    t2 = (M t^2 + p1(t1) t + p2(t1)) / (N t + p3(t1))

The turn applied to ``w`` is pi - delta (clockwise for ``cw``), which puts
the refracted ray at angle ``delta`` from the back-ray v -> v1.

Membership of a generator pair in the blocked set is decided directly by the
neighborhood predicate (:func:`blocked`); the curve is used for boundary
analysis only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .geom import EPS_GEOM, Disc, GeometryError, Point, Segment, SegmentSet, homothety_segment, param_point
from .neighborhoods import (
    BetaSpec,
    make_neighborhood,
    segment_intersects_disc,
    segment_intersects_nbhd,
)

CW = "cw"
CCW = "ccw"


@dataclass(frozen=True)
class RefractionCoeffs:
    A1: float
    B1: float
    C1: float
    A2: float
    B2: float
    C2: float
    J: float
    K: float
    L: float
    D: float
    E: float
    F: float
    G: float
    H: float
    I: float
    M: float
    N: float
    p1: tuple[float, float, float]  # ascending powers of t1
    p2: tuple[float, float, float]
    p3: tuple[float, float, float]
    delta: float
    orientation: str
    s1: Segment
    s: Segment
    s2: Segment

    @staticmethod
    def _poly(c, t1):
        return c[0] + t1 * (c[1] + t1 * c[2])

    def p(self, which: int, t1: float) -> float:
        return self._poly((self.p1, self.p2, self.p3)[which - 1], t1)

    def ray(self, t1: float, t: float) -> tuple[float, float]:
        """Rotated ray direction R w(t) at (t1, t)."""
        return (self.D * t + self.E * t1 + self.F, self.G * t + self.H * t1 + self.I)


def refraction_coeffs(s1: Segment, s: Segment, s2: Segment, delta: float, orientation: str = CW) -> RefractionCoeffs:
    if not 0.0 < delta < math.pi:
        raise GeometryError(f"refraction angle must lie in (0, pi), got {delta}")
    if orientation not in (CW, CCW):
        raise GeometryError(f"orientation must be 'cw' or 'ccw', got {orientation!r}")
    for seg in (s1, s, s2):
        if seg.length <= EPS_GEOM:
            raise GeometryError("degenerate segment in refraction triple")
    (x1, y1), (x2, y2) = s.a, s.b  # refracting segment
    dx, dy = x2 - x1, y2 - y1
    dx2, dy2 = s2.b.x - s2.a.x, s2.b.y - s2.a.y
    ex, ey = x1 - s2.a.x, y1 - s2.a.y

    A1, A2 = dx, dy
    B1, B2 = -(s1.b.x - s1.a.x), -(s1.b.y - s1.a.y)
    C1, C2 = x1 - s1.a.x, y1 - s1.a.y

    theta = math.pi - delta
    c, sn = math.cos(theta), math.sin(theta)
    sg = 1.0 if orientation == CW else -1.0
    D, E, F = (c * A1 + sg * sn * A2, c * B1 + sg * sn * B2, c * C1 + sg * sn * C2)
    G, H, I = (-sg * sn * A1 + c * A2, -sg * sn * B1 + c * B2, -sg * sn * C1 + c * C2)

    J, K, L = -dx, dx2, s2.a.x - x1

    M = dy * D - dx * G
    N = dy2 * D - dx2 * G
    p1 = (dy * F - dx * I + ey * D - ex * G, dy * E - dx * H, 0.0)
    p2 = (ey * F - ex * I, ey * E - ex * H, 0.0)
    p3 = (dy2 * F - dx2 * I, dy2 * E - dx2 * H, 0.0)
    return RefractionCoeffs(
        A1, B1, C1, A2, B2, C2, J, K, L, D, E, F, G, H, I, M, N, p1, p2, p3,
        delta, orientation, s1, s, s2,
    )


def t2_of(c: RefractionCoeffs, t1: float, t: float) -> Optional[float]:
    """Parameter on P(s2) hit by the refracted half-ray, or None if it misses."""
    den = c.N * t + c.p(3, t1)
    if abs(den) < EPS_GEOM:
        return None
    t2 = (c.M * t * t + c.p(1, t1) * t + c.p(2, t1)) / den
    ux, uy = c.ray(t1, t)
    uu = ux * ux + uy * uy
    if uu == 0.0:
        return None
    q = param_point(c.s, t)
    q2 = param_point(c.s2, t2)
    z = ((q2.x - q.x) * ux + (q2.y - q.y) * uy) / uu
    if z < 0.0:
        return None
    return t2


def _real_roots(a: float, b: float, cc: float) -> list[float]:
    scale = max(abs(a), abs(b), abs(cc))
    if scale == 0.0:
        return []
    if abs(a) <= 1e-14 * scale:
        if abs(b) <= 1e-14 * scale:
            return []
        return [-cc / b]
    disc = b * b - 4.0 * a * cc
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    if q == 0.0:
        return [0.0]
    roots = {q / a, cc / q}
    return sorted(roots)


def extreme_t(c: RefractionCoeffs, t1: float) -> list[float]:
    """Stationary points of t -> t2(t) at fixed t1, poles excluded."""
    p1, p2, p3 = c.p(1, t1), c.p(2, t1), c.p(3, t1)
    roots = _real_roots(c.M * c.N, 2.0 * c.M * p3, p1 * p3 - c.N * p2)
    return [t for t in roots if abs(c.N * t + p3) >= EPS_GEOM]


def circle_c1(q1, q2, beta: float) -> Disc:
    """Disc of the beta >= 1 lune of (q1, q2) whose boundary passes through q1."""
    if beta < 1.0:
        raise GeometryError("C1 is defined for beta >= 1")
    h = 0.5 * beta
    cx, cy = (1.0 - h) * q1[0] + h * q2[0], (1.0 - h) * q1[1] + h * q2[1]
    return Disc(Point(cx, cy), h * math.hypot(q2[0] - q1[0], q2[1] - q1[1]))


def aux_segment(s: Segment, q1, beta: float) -> Segment:
    """Image of ``s`` under the homothety about q1 with ratio 1/beta.

    A point q of s lies on C1(q1, q2, beta) exactly when the ray q1 -> q,
    scaled to the auxiliary point w = q1 + (q - q1)/beta, turns at a right
    angle at w towards q2.
    """
    if beta < 1.0:
        raise GeometryError("auxiliary segment requires beta >= 1")
    return homothety_segment(q1, 1.0 / beta, s)


FULL = "full"
DISC1 = "disc1"
DISC2 = "disc2"


@dataclass(frozen=True)
class BlockedRegionQuery:
    s1: int
    s: int
    s2: int
    spec: BetaSpec
    side: str = FULL

    def __post_init__(self):
        if self.s in (self.s1, self.s2):
            raise ValueError("blocker must differ from the generator sites")
        if self.side not in (FULL, DISC1, DISC2):
            raise ValueError(f"unknown side {self.side!r}")


def blocked(S: SegmentSet, q: BlockedRegionQuery, t1: float, t2: float) -> bool:
    """Whether site ``q.s`` meets the region generated by (q1(t1), q2(t2))."""
    v1 = param_point(S[q.s1], t1)
    v2 = param_point(S[q.s2], t2)
    N = make_neighborhood(v1, v2, q.spec)
    if q.side == FULL:
        return segment_intersects_nbhd(N, S[q.s])
    disc = N.discs[0] if q.side == DISC1 or len(N.discs) == 1 else N.discs[1]
    return segment_intersects_disc(disc, S[q.s], q.spec.closed)
