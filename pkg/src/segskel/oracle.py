"""Brute-force reference implementations.

Nothing here touches the lattice engine, the refraction algebra or the
Voronoi raster.  The segment oracle evaluates every generator pair of a dense
grid directly: it builds the neighborhood discs from their geometric
description (chord discs through both generators, or discs centred on the
generator chord) and clips each blocker against them.  The point oracles are
the textbook all-pairs / all-triples definitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .geom import EPS_GEOM, Point, SegmentSet
from .graph import GeneratorPair, SkeletonGraph
from .neighborhoods import CIRCLE, BetaSpec, make_neighborhood, nbhd_contains


@dataclass(frozen=True)
class OracleConfig:
    grid: int = 256  # intervals per axis; samples are k / grid for k = 0..grid
    probe_density: int = 1000

    def __post_init__(self):
        if self.grid < 2:
            raise ValueError(f"oracle grid must be at least 2, got {self.grid}")


def _discs(v1x, v1y, v2x, v2y, spec: BetaSpec):
    """(discs, union) for arrays of generator coordinates; each disc is (cx, cy, r)."""
    beta = spec.beta
    ex, ey = v2x - v1x, v2y - v1y
    d = np.hypot(ex, ey)
    mx, my = 0.5 * (v1x + v2x), 0.5 * (v1y + v2y)
    if beta == 1.0:
        return [(mx, my, 0.5 * d)], False
    if beta < 1.0 or spec.variant == CIRCLE:
        # both circles pass through v1 and v2
        r = d / (2.0 * beta) if beta < 1.0 else 0.5 * beta * d
        h = np.sqrt(np.maximum(r * r - 0.25 * d * d, 0.0))
        nx, ny = -ey / d, ex / d
        return [(mx + h * nx, my + h * ny, r), (mx - h * nx, my - h * ny, r)], beta > 1.0
    # beta > 1 lune: discs centred on the line v1v2, each through one generator
    r = 0.5 * beta * d
    ux, uy = ex / d, ey / d
    return [(v1x + r * ux, v1y + r * uy, r), (v2x - r * ux, v2y - r * uy, r)], False


def _clip(seg, cx, cy, R):
    """Vectorized parameter interval of ``seg`` inside discs (cx, cy, R); empty where lo > hi."""
    ax, ay, bx, by = seg
    dx, dy = bx - ax, by - ay
    A = dx * dx + dy * dy
    fx, fy = ax - cx, ay - cy
    if A == 0.0:
        inside = fx * fx + fy * fy <= R * R
        return np.where(inside, 0.0, 1.0), np.where(inside, 1.0, 0.0)
    u0 = -(fx * dx + fy * dy) / A
    hx, hy = fx + u0 * dx, fy + u0 * dy
    disc = R * R - (hx * hx + hy * hy)
    ok = (disc >= 0.0) & (R >= 0.0)
    w = np.sqrt(np.where(ok, disc, 0.0) / A)
    lo = np.maximum(u0 - w, 0.0)
    hi = np.minimum(u0 + w, 1.0)
    return np.where(ok, lo, 1.0), np.where(ok, hi, 0.0)


def oracle_free_mask(S: SegmentSet, i: int, j: int, spec: BetaSpec, cfg: OracleConfig = OracleConfig()) -> np.ndarray:
    """Boolean (grid+1, grid+1) array; entry [a, b] is True when (a/grid, b/grid) is unblocked."""
    if i == j:
        raise ValueError("oracle needs two distinct sites")
    t = np.arange(cfg.grid + 1, dtype=float) / cfg.grid
    T1, T2 = np.meshgrid(t, t, indexing="ij")
    (a1, b1), (a2, b2) = S[i], S[j]
    v1x = np.where(T1 == 1.0, b1.x, a1.x + T1 * (b1.x - a1.x))
    v1y = np.where(T1 == 1.0, b1.y, a1.y + T1 * (b1.y - a1.y))
    v2x = np.where(T2 == 1.0, b2.x, a2.x + T2 * (b2.x - a2.x))
    v2y = np.where(T2 == 1.0, b2.y, a2.y + T2 * (b2.y - a2.y))
    discs, union = _discs(v1x, v1y, v2x, v2y, spec)
    tol = S.eps if spec.closed else -S.eps
    free = np.ones_like(T1, dtype=bool)
    for k, s in enumerate(S.sites):
        if k in (i, j):
            continue
        seg = s.coords()
        spans = [_clip(seg, cx, cy, r + tol) for cx, cy, r in discs]
        if union:
            hit = np.zeros_like(free)
            for lo, hi in spans:
                hit |= lo <= hi
        else:
            lo = np.maximum.reduce([sp[0] for sp in spans])
            hi = np.minimum.reduce([sp[1] for sp in spans])
            hit = lo <= hi
        free &= ~hit
    return free


def oracle_witness(S: SegmentSet, i: int, j: int, spec: BetaSpec, cfg: OracleConfig = OracleConfig()) -> Optional[GeneratorPair]:
    """First free grid sample in row-major (t1, t2) order, or None."""
    free = oracle_free_mask(S, i, j, spec, cfg)
    idx = np.flatnonzero(free)
    if idx.size == 0:
        return None
    a, b = divmod(int(idx[0]), cfg.grid + 1)
    return GeneratorPair(a / cfg.grid, b / cfg.grid)


def oracle_edge(S: SegmentSet, i: int, j: int, spec: BetaSpec, cfg: OracleConfig = OracleConfig()) -> bool:
    return bool(oracle_free_mask(S, i, j, spec, cfg).any())


def oracle_skeleton(S: SegmentSet, spec: BetaSpec, cfg: OracleConfig = OracleConfig()) -> SkeletonGraph:
    """All-pairs grid skeleton; witnesses are the first free samples."""
    G = SkeletonGraph(len(S))
    for i, j in combinations(range(len(S)), 2):
        w = oracle_witness(S, i, j, spec, cfg)
        if w is not None:
            G.add_edge(i, j, w)
    return G


def _check_distinct(V: Sequence[Sequence[float]]) -> list[Point]:
    pts = [Point(float(p[0]), float(p[1])) for p in V]
    for (a, p), (b, q) in combinations(enumerate(pts), 2):
        if math.hypot(p.x - q.x, p.y - q.y) <= EPS_GEOM:
            raise ValueError(f"points {a} and {b} coincide")
    return pts


def point_skeleton_oracle(V: Sequence[Sequence[float]], spec: BetaSpec) -> SkeletonGraph:
    """Classic beta-skeleton of a point set, by testing every point against every pair."""
    pts = _check_distinct(V)
    G = SkeletonGraph(len(pts))
    for i, j in combinations(range(len(pts)), 2):
        N = make_neighborhood(pts[i], pts[j], spec)
        if not any(nbhd_contains(N, p) for k, p in enumerate(pts) if k not in (i, j)):
            G.add_edge(i, j)
    return G


def point_delaunay_oracle(V: Sequence[Sequence[float]]) -> set[tuple[int, int]]:
    """Delaunay edges of a point set: sides of triangles whose circumcircle is empty."""
    pts = _check_distinct(V)
    n = len(pts)
    if n == 2:
        return {(0, 1)}
    edges: set[tuple[int, int]] = set()
    for a, b, c in combinations(range(n), 3):
        (ax, ay), (bx, by), (cx, cy) = pts[a], pts[b], pts[c]
        den = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if abs(den) <= EPS_GEOM:
            continue
        a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
        ox = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den
        oy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den
        r = math.hypot(ax - ox, ay - oy)
        if all(math.hypot(p.x - ox, p.y - oy) >= r - EPS_GEOM for k, p in enumerate(pts) if k not in (a, b, c)):
            edges |= {(a, b), (a, c), (b, c)}
    return edges
