"""Gabriel graph of segments, with the sliding-midpoint geometry behind it.

An edge (i, j) exists when some diameter disc, with one end on site i and the
other on site j, keeps every other site outside.  The decision itself runs on
the lattice engine shared with the skeleton solver; the frame, ellipse and
clearance-curve helpers describe where the disc centres can lie and serve as
independent checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .delaunay import EmptyDisc
from .geom import (
    EPS_GEOM,
    GeometryError,
    Point,
    Segment,
    SegmentSet,
    cross,
    dist_point_segment,
    param_point,
    require_general_position,
)
from .graph import GeneratorPair, SkeletonGraph
from .solver import DEFAULT_EPSILON, WitnessError, lattice_size

QUADRILATERAL = "quadrilateral"
SEGMENT = "segment"
POINT = "point"

INTERIOR = "interior"
ENDPOINT1 = "endpoint1"
ENDPOINT2 = "endpoint2"


@dataclass(frozen=True)
class MidpointRegion:
    kind: str
    vertices: tuple[Point, ...]


def _mid(p, q) -> Point:
    return Point(0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))


def _is_parallel(s1: Segment, s2: Segment, eps: float = EPS_GEOM) -> bool:
    d1, d2 = s1.direction, s2.direction
    l1, l2 = s1.length, s2.length
    if l1 <= eps or l2 <= eps:
        return True
    return abs(cross(d1.x, d1.y, d2.x, d2.y)) <= eps * l1 * l2


def midpoint_region(s1: Segment, s2: Segment) -> MidpointRegion:
    """Set of midpoints of (v1, v2) with v1 on s1 and v2 on s2."""
    if s1.length <= EPS_GEOM and s2.length <= EPS_GEOM:
        return MidpointRegion(POINT, (_mid(s1.a, s2.a),))
    if _is_parallel(s1, s2):
        mids = [_mid(e1, e2) for e1 in s1 for e2 in s2]
        base = s1 if s1.length >= s2.length else s2
        d = base.direction
        key = [m.x * d.x + m.y * d.y for m in mids]
        lo = mids[int(np.argmin(key))]
        hi = mids[int(np.argmax(key))]
        return MidpointRegion(SEGMENT, (lo, hi))
    (a1, b1), (a2, b2) = s1, s2
    return MidpointRegion(QUADRILATERAL, (_mid(a1, a2), _mid(b1, a2), _mid(b1, b2), _mid(a1, b2)))


@dataclass(frozen=True)
class GabrielFrame:
    """Rigid motion p -> R (p - origin) putting s1 on the negative x-axis.

    ``origin`` is the crossing of the two supporting lines (s1's first
    endpoint when they are parallel); ``(x1, y1)`` is the unit direction of
    P(s2) in the frame, oriented so that y1 >= 0.
    """

    origin: Point
    cos: float
    sin: float
    x1: float
    y1: float
    parallel_case: bool

    def to_frame(self, p) -> Point:
        dx, dy = p[0] - self.origin.x, p[1] - self.origin.y
        return Point(self.cos * dx - self.sin * dy, self.sin * dx + self.cos * dy)

    def to_world(self, p) -> Point:
        x, y = p[0], p[1]
        return Point(self.origin.x + self.cos * x + self.sin * y, self.origin.y - self.sin * x + self.cos * y)

    @property
    def k(self) -> float:
        if self.parallel_case:
            raise GeometryError("parallel frame has no ellipse")
        return self.x1 / self.y1


def make_frame(s1: Segment, s2: Segment) -> GabrielFrame:
    if s1.length <= EPS_GEOM or s2.length <= EPS_GEOM:
        raise GeometryError("frame needs two non-degenerate segments")
    d1, d2 = s1.direction, s2.direction
    den = cross(d1.x, d1.y, d2.x, d2.y)
    parallel = _is_parallel(s1, s2)
    if parallel:
        origin = s1.a
        ux, uy = d1.x, d1.y
    else:
        t = cross(s2.a.x - s1.a.x, s2.a.y - s1.a.y, d2.x, d2.y) / den
        origin = Point(s1.a.x + t * d1.x, s1.a.y + t * d1.y)
        m = _mid(s1.a, s1.b)
        ux, uy = m.x - origin.x, m.y - origin.y
        if math.hypot(ux, uy) <= EPS_GEOM:
            ux, uy = d1.x, d1.y
    # rotate (ux, uy) onto the negative x-axis
    phi = math.pi - math.atan2(uy, ux)
    c, sn = math.cos(phi), math.sin(phi)
    L2 = s2.length
    x1 = (c * d2.x - sn * d2.y) / L2
    y1 = (sn * d2.x + c * d2.y) / L2
    if y1 < 0.0 or (y1 == 0.0 and x1 < 0.0):
        x1, y1 = -x1, -y1
    if parallel:
        y1 = 0.0
    return GabrielFrame(Point(*origin), c, sn, x1, y1, parallel)


def ellipse_residual(frame: GabrielFrame, r: float, p) -> float:
    """x^2 + (1 + 4k^2) y^2 - 4kxy - r^2 with k = x1/y1, in frame coordinates.

    Evaluated as (x - 2ky)^2 + y^2 - r^2, which avoids the cancellation of the
    expanded form when the frame lines are nearly parallel (large |k|).
    """
    k = frame.k
    x, y = p[0], p[1]
    z = x - 2.0 * k * y
    return z * z + y * y - r * r


def sliding_midpoint(frame: GabrielFrame, a: float, u: float) -> Point:
    """Midpoint of v1 = (a, 0) on P(s1) and v2 = u (x1, y1) on P(s2), in frame coordinates."""
    return Point(0.5 * (a + u * frame.x1), 0.5 * u * frame.y1)


@dataclass(frozen=True)
class GabrielCurves:
    """Crossings of the midpoint ellipse with the clearance curve of one blocker part.

    ``lines`` holds one (A, B, C, base, direction) record per offset line
    (interior target): the line point base + t_L direction is on the ellipse
    when A t_L^2 + B t_L + C = r^2.  For endpoint targets the ellipse gives
    x = (N1 y^2 + N2 y + N3) / (N4 y + N5) and the circle of radius r about
    the endpoint turns that into M1 y^4 + ... + M5 = 0.
    """

    target: str
    r: float
    k: float
    lines: tuple = ()
    N: tuple = ()
    M: tuple = ()
    endpoint: Optional[Point] = None

    def crossings(self) -> list[Point]:
        out: list[Point] = []
        r2 = self.r * self.r
        for A, B, C, base, d in self.lines:
            for t in _quadratic_roots(A, B, C - r2):
                out.append(Point(base[0] + t * d[0], base[1] + t * d[1]))
        if self.M:
            N1, N2, N3, N4, N5 = self.N
            for y in _real_poly_roots(self.M):
                y = self._polish(y)
                den = N4 * y + N5
                if abs(den) <= 1e-14:
                    continue
                out.append(Point((N1 * y * y + N2 * y + N3) / den, y))
        return out

    def _polish(self, y: float) -> float:
        # Newton on the circle equation through x(y); the expanded quartic
        # loses digits when the supporting lines are close to parallel
        N1, N2, N3, N4, N5 = self.N
        ex, ey = self.endpoint

        def g(y):
            P, Q = N1 * y * y + N2 * y + N3, N4 * y + N5
            x = P / Q
            dx = ((2.0 * N1 * y + N2) * Q - P * N4) / (Q * Q)
            return (x - ex) ** 2 + (y - ey) ** 2 - self.r**2, 2.0 * (x - ex) * dx + 2.0 * (y - ey)

        try:
            f, df = g(y)
            for _ in range(8):
                if df == 0.0 or f == 0.0:
                    break
                y_new = y - f / df
                f_new, df_new = g(y_new)
                if not abs(f_new) < abs(f):
                    break
                y, f, df = y_new, f_new, df_new
        except ZeroDivisionError:
            pass
        return y


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        return []
    if abs(a) <= 1e-14 * scale:
        return [] if abs(b) <= 1e-14 * scale else [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        return [0.0]
    return sorted({q / a, c / q})


def _real_poly_roots(coeffs) -> list[float]:
    """Real roots of a polynomial (descending coefficients), Newton-polished."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "f")
    if c.size < 2:
        return []
    dc = np.polyder(c)
    out = []
    for z in np.roots(c):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        y = float(z.real)
        for _ in range(4):
            f, g = np.polyval(c, y), np.polyval(dc, y)
            if g == 0.0:
                break
            step = f / g
            if not math.isfinite(step) or abs(step) > 1e-3 * max(1.0, abs(y)):
                break
            y -= step
        out.append(y)
    return out


def curve_case_coeffs(frame: GabrielFrame, s: Segment, r: float, target: str = INTERIOR) -> GabrielCurves:
    if frame.parallel_case:
        raise GeometryError("clearance curves need intersecting supporting lines")
    if not r > 0.0:
        raise GeometryError(f"radius must be positive, got {r}")
    k = frame.k
    q = 1.0 + 4.0 * k * k
    a, b = frame.to_frame(s.a), frame.to_frame(s.b)
    if target == INTERIOR:
        dx, dy = b.x - a.x, b.y - a.y
        L = math.hypot(dx, dy)
        if L <= EPS_GEOM:
            raise GeometryError("interior target needs a non-degenerate blocker")
        nx, ny = -dy / L, dx / L
        lines = []
        for sg in (1.0, -1.0):
            px, py = a.x + sg * r * nx, a.y + sg * r * ny
            A = dx * dx + q * dy * dy - 4.0 * k * dx * dy
            B = 2.0 * (px * dx + q * py * dy) - 4.0 * k * (px * dy + py * dx)
            C = px * px + q * py * py - 4.0 * k * px * py
            lines.append((A, B, C, (px, py), (dx, dy)))
        return GabrielCurves(target, r, k, lines=tuple(lines))
    if target not in (ENDPOINT1, ENDPOINT2):
        raise ValueError(f"unknown target {target!r}")
    e = a if target == ENDPOINT1 else b
    # ellipse minus circle about e is linear in x: x (N4 y + N5) = N1 y^2 + N2 y + N3
    N = (-4.0 * k * k, -2.0 * e.y, e.x * e.x + e.y * e.y, -4.0 * k, 2.0 * e.x)
    N1, N2, N3, N4, N5 = N
    P = np.array([N1, N2, N3])
    Q = np.array([N4, N5])
    circ = np.array([1.0, -2.0 * e.y, e.y * e.y - r * r])
    lhs = np.polymul(np.polysub(P, np.polymul([e.x], Q)), np.polysub(P, np.polymul([e.x], Q)))
    quartic = np.polyadd(lhs, np.polymul(circ, np.polymul(Q, Q)))
    M = tuple(float(v) for v in np.concatenate([np.zeros(5 - quartic.size), quartic]))
    return GabrielCurves(target, r, k, N=N, M=M, endpoint=Point(e.x, e.y))


def gabriel_margin(S: SegmentSet, i: int, j: int, t1: float, t2: float) -> float:
    """Smallest clearance of the diameter disc of (q_i(t1), q_j(t2)) to the other sites."""
    v1, v2 = param_point(S[i], t1), param_point(S[j], t2)
    p = _mid(v1, v2)
    r = 0.5 * math.hypot(v2.x - v1.x, v2.y - v1.y)
    others = [dist_point_segment(p, s) for k, s in enumerate(S.sites) if k not in (i, j)]
    return (min(others) if others else math.inf) - r


def gg_edge_exists(
    S: SegmentSet, i: int, j: int, epsilon: float = DEFAULT_EPSILON, backend: Optional[str] = None
) -> Optional[tuple[Point, float, GeneratorPair]]:
    """Disc (centre, radius, generators) clearing every other site, or None."""
    if i == j:
        raise ValueError("gg_edge_exists needs two distinct sites")
    m = lattice_size(epsilon)
    hit = kernels.find_witness_lattice(
        S.as_array(), i, j, 1.0, False, True, S.eps, m, kernels.MODE_GABRIEL, backend=backend
    )
    if hit is None:
        return None
    w = GeneratorPair(hit[0] / m, hit[1] / m)
    if not gabriel_margin(S, i, j, w.t1, w.t2) > S.eps:
        raise WitnessError(f"Gabriel witness {w} for ({i}, {j}) failed re-verification")
    v1, v2 = param_point(S[i], w.t1), param_point(S[j], w.t2)
    return _mid(v1, v2), 0.5 * math.hypot(v2.x - v1.x, v2.y - v1.y), w


def gg_graph(
    S: SegmentSet, epsilon: float = DEFAULT_EPSILON, backend: Optional[str] = None, validate: bool = True
) -> SkeletonGraph:
    """GG(S) over all site pairs; certificates hold the empty diameter discs."""
    if validate:
        require_general_position(S)
    G = SkeletonGraph(len(S))
    for i, j in combinations(range(len(S)), 2):
        res = gg_edge_exists(S, i, j, epsilon, backend)
        if res is not None:
            p, r, w = res
            G.add_edge(i, j, w)
            G.certificates[(i, j)] = EmptyDisc(p, r)
    return G
