"""Pure-Python implementation of the hot kernels.

Mirrors ``_kernels.pyx`` function for function; used when the compiled
extension is unavailable and as its reference in tests.

The witness search walks an integer lattice ``{0..m} x {0..m}`` over the
generator parameters (t1, t2) = (k1/m, k2/m).  Cells are processed breadth
first; each cell samples its centre and corners, returns the first free
sample, and is discarded only when one blocker covers the whole cell with a
Lipschitz certificate.  Pruning is therefore sound: a discarded cell holds no
free lattice point.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .geom import closest_param, dist_point_segment_xy
from .neighborhoods import INTERSECTION, SINGLE, UNION, disc_params, segment_hits_discs

MODE_SKELETON = 0
MODE_GABRIEL = 1

_GOLDEN = 0.5 * (math.sqrt(5.0) - 1.0)


def lipschitz_constant(beta: float) -> float:
    """Bound on how fast any disc's (radius - distance) moves per unit of generator motion."""
    if beta == 1.0:
        return 1.0
    if beta < 1.0:
        return 1.0 / beta
    return beta


def _disc_depth(cx, cy, r, ax, ay, bx, by):
    return r - dist_point_segment_xy(cx, cy, ax, ay, bx, by)


def segment_depth(combine, discs, ax, ay, bx, by) -> float:
    """Lower bound (exact up to golden-section accuracy) on how deep the segment reaches into the region."""
    if combine == SINGLE:
        cx, cy, r = discs[0]
        return _disc_depth(cx, cy, r, ax, ay, bx, by)
    if combine == UNION:
        return max(_disc_depth(cx, cy, r, ax, ay, bx, by) for cx, cy, r in discs)
    (c1x, c1y, r1), (c2x, c2y, r2) = discs
    dx, dy = bx - ax, by - ay

    def f(u):
        px, py = ax + u * dx, ay + u * dy
        return min(r1 - math.hypot(px - c1x, py - c1y), r2 - math.hypot(px - c2x, py - c2y))

    # the maximiser of a min of two concave functions lies between their maximisers
    u1 = closest_param(c1x, c1y, ax, ay, bx, by)
    u2 = closest_param(c2x, c2y, ax, ay, bx, by)
    lo, hi = (u1, u2) if u1 <= u2 else (u2, u1)
    best = max(f(lo), f(hi))
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(48):
        if hi - lo < 1e-13:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    return max(best, f1, f2)


def _generators(seg, t):
    ax, ay, bx, by = seg
    return ax + t * (bx - ax), ay + t * (by - ay)


class _Problem:
    def __init__(self, segs, i, j, beta, circle, closed, eps, m, mode):
        self.segs = [tuple(map(float, s)) for s in np.asarray(segs, dtype=np.float64).reshape(-1, 4)]
        self.s1, self.s2 = self.segs[i], self.segs[j]
        self.blockers = [k for k in range(len(self.segs)) if k != i and k != j]
        self.beta, self.circle, self.closed, self.eps = beta, circle, closed, eps
        self.m, self.mode = m, mode
        self.len1 = math.hypot(self.s1[2] - self.s1[0], self.s1[3] - self.s1[1])
        self.len2 = math.hypot(self.s2[2] - self.s2[0], self.s2[3] - self.s2[1])
        self.lip = lipschitz_constant(beta)

    def point(self, k1, k2):
        m = self.m
        v1 = _generators(self.s1, k1 / m)
        v2 = _generators(self.s2, k2 / m)
        return v1, v2

    def blocking(self, k1, k2) -> list[int]:
        (v1x, v1y), (v2x, v2y) = self.point(k1, k2)
        eps = self.eps
        if self.mode == MODE_GABRIEL:
            px, py = 0.5 * (v1x + v2x), 0.5 * (v1y + v2y)
            r = 0.5 * math.hypot(v2x - v1x, v2y - v1y)
            return [
                k for k in self.blockers if dist_point_segment_xy(px, py, *self.segs[k]) <= r + eps
            ]
        combine, discs = disc_params(v1x, v1y, v2x, v2y, self.beta, self.circle)
        return [
            k for k in self.blockers if segment_hits_discs(combine, discs, self.closed, eps, *self.segs[k])
        ]

    def certifies(self, k, k1, k2, rho) -> bool:
        (v1x, v1y), (v2x, v2y) = self.point(k1, k2)
        seg = self.segs[k]
        if self.mode == MODE_GABRIEL:
            px, py = 0.5 * (v1x + v2x), 0.5 * (v1y + v2y)
            r = 0.5 * math.hypot(v2x - v1x, v2y - v1y)
            return dist_point_segment_xy(px, py, *seg) - r + rho < -self.eps
        combine, discs = disc_params(v1x, v1y, v2x, v2y, self.beta, self.circle)
        return segment_depth(combine, discs, *seg) - self.lip * rho > 2.0 * self.eps


def find_witness_lattice(segs, i, j, beta, circle, closed, eps, m, mode=MODE_SKELETON, trace=None):
    """First free lattice point ``(k1, k2)`` in subdivision order, or None.

    ``trace``, when a list, receives ``(k1lo, k1hi, k2lo, k2hi, status)`` per
    processed cell with status ``free`` / ``blocked`` / ``mixed``.
    """
    P = _Problem(segs, i, j, float(beta), bool(circle), bool(closed), float(eps), int(m), mode)
    queue = deque([(0, m, 0, m)])
    while queue:
        i0, i1, j0, j1 = queue.popleft()
        im, jm = (i0 + i1) // 2, (j0 + j1) // 2
        samples = [(im, jm)]
        for c in ((i0, j0), (i0, j1), (i1, j0), (i1, j1)):
            if c not in samples:
                samples.append(c)
        common = None
        for k1, k2 in samples:
            bl = P.blocking(k1, k2)
            if not bl:
                if trace is not None:
                    trace.append((i0, i1, j0, j1, "free"))
                return (k1, k2)
            common = set(bl) if common is None else common & set(bl)
        if i1 - i0 <= 1 and j1 - j0 <= 1:
            if trace is not None:
                trace.append((i0, i1, j0, j1, "blocked"))
            continue
        rho = (max(im - i0, i1 - im) * P.len1 + max(jm - j0, j1 - jm) * P.len2) / m
        if any(P.certifies(k, im, jm, rho) for k in sorted(common)):
            if trace is not None:
                trace.append((i0, i1, j0, j1, "blocked"))
            continue
        if trace is not None:
            trace.append((i0, i1, j0, j1, "mixed"))
        ihalves = ((i0, im), (im, i1)) if i1 - i0 > 1 else ((i0, i1),)
        jhalves = ((j0, jm), (jm, j1)) if j1 - j0 > 1 else ((j0, j1),)
        for a, b in ihalves:
            for c, d in jhalves:
                queue.append((a, b, c, d))
    return None


def nearest_labels(segs, xs, ys) -> np.ndarray:
    """Row-major (len(ys), len(xs)) array of nearest-site indices; ties go to the lowest index."""
    segs = np.asarray(segs, dtype=np.float64).reshape(-1, 4)
    X, Y = np.meshgrid(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64))
    best = np.full(X.shape, np.inf)
    labels = np.zeros(X.shape, dtype=np.int32)
    for k, (ax, ay, bx, by) in enumerate(segs):
        dx, dy = bx - ax, by - ay
        dd = dx * dx + dy * dy
        if dd == 0.0:
            u = np.zeros_like(X)
        else:
            u = np.clip(((X - ax) * dx + (Y - ay) * dy) / dd, 0.0, 1.0)
        d2 = (ax + u * dx - X) ** 2 + (ay + u * dy - Y) ** 2
        closer = d2 < best
        best = np.where(closer, d2, best)
        labels[closer] = k
    return labels
