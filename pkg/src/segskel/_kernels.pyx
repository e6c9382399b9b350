# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: lattice witness search and nearest-site labeling.

Semantics are identical to ``_pykernels``; see that module for the search
invariants.
"""

from libc.math cimport sqrt, hypot, INFINITY
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset

import numpy as np

DEF SINGLE = 0
DEF INTERSECTION = 1
DEF UNION = 2

cdef double GOLDEN = 0.6180339887498949

MODE_SKELETON = 0
MODE_GABRIEL = 1


cdef struct Nb:
    int combine
    int ndiscs
    double cx[2]
    double cy[2]
    double r[2]


cdef inline void make_nb(double v1x, double v1y, double v2x, double v2y,
                         double beta, bint circle, Nb* nb) noexcept nogil:
    cdef double ex = v2x - v1x, ey = v2y - v1y
    cdef double d = hypot(ex, ey)
    cdef double k, r, mx, my, ox, oy, h
    if beta == 1.0:
        nb.combine = SINGLE
        nb.ndiscs = 1
        nb.cx[0] = 0.5 * (v1x + v2x)
        nb.cy[0] = 0.5 * (v1y + v2y)
        nb.r[0] = 0.5 * d
        return
    nb.ndiscs = 2
    if beta < 1.0 or circle:
        if beta < 1.0:
            k = 0.5 * sqrt(1.0 / (beta * beta) - 1.0)
            r = d / (2.0 * beta)
            nb.combine = INTERSECTION
        else:
            k = 0.5 * sqrt(beta * beta - 1.0)
            r = 0.5 * beta * d
            nb.combine = UNION
        mx = 0.5 * (v1x + v2x)
        my = 0.5 * (v1y + v2y)
        ox = -k * ey
        oy = k * ex
        nb.cx[0] = mx + ox
        nb.cy[0] = my + oy
        nb.cx[1] = mx - ox
        nb.cy[1] = my - oy
        nb.r[0] = r
        nb.r[1] = r
        return
    h = 0.5 * beta
    r = h * d
    nb.combine = INTERSECTION
    nb.cx[0] = (1.0 - h) * v1x + h * v2x
    nb.cy[0] = (1.0 - h) * v1y + h * v2y
    nb.cx[1] = h * v1x + (1.0 - h) * v2x
    nb.cy[1] = h * v1y + (1.0 - h) * v2y
    nb.r[0] = r
    nb.r[1] = r


cdef inline bint clip(double ax, double ay, double bx, double by,
                      double cx, double cy, double R, double* lo, double* hi) noexcept nogil:
    cdef double dx, dy, fx, fy, A, u0, hx, hy, disc, w
    if R < 0.0:
        return False
    dx = bx - ax
    dy = by - ay
    fx = ax - cx
    fy = ay - cy
    A = dx * dx + dy * dy
    if A == 0.0:
        if fx * fx + fy * fy <= R * R:
            lo[0] = 0.0
            hi[0] = 1.0
            return True
        return False
    u0 = -(fx * dx + fy * dy) / A
    hx = fx + u0 * dx
    hy = fy + u0 * dy
    disc = R * R - (hx * hx + hy * hy)
    if disc < 0.0:
        return False
    w = sqrt(disc / A)
    lo[0] = u0 - w if u0 - w > 0.0 else 0.0
    hi[0] = u0 + w if u0 + w < 1.0 else 1.0
    return lo[0] <= hi[0]


cdef inline bint seg_hits(Nb* nb, bint closed, double eps,
                          double ax, double ay, double bx, double by) noexcept nogil:
    cdef double lo1, hi1, lo2, hi2, R
    cdef int q
    if nb.combine == INTERSECTION:
        R = nb.r[0] + eps if closed else nb.r[0] - eps
        if not clip(ax, ay, bx, by, nb.cx[0], nb.cy[0], R, &lo1, &hi1):
            return False
        R = nb.r[1] + eps if closed else nb.r[1] - eps
        if not clip(ax, ay, bx, by, nb.cx[1], nb.cy[1], R, &lo2, &hi2):
            return False
        return (lo1 if lo1 > lo2 else lo2) <= (hi1 if hi1 < hi2 else hi2)
    for q in range(nb.ndiscs):
        R = nb.r[q] + eps if closed else nb.r[q] - eps
        if clip(ax, ay, bx, by, nb.cx[q], nb.cy[q], R, &lo1, &hi1):
            return True
    return False


cdef inline double closest_u(double px, double py, double ax, double ay,
                             double bx, double by) noexcept nogil:
    cdef double dx = bx - ax, dy = by - ay
    cdef double dd = dx * dx + dy * dy
    cdef double u
    if dd == 0.0:
        return 0.0
    u = ((px - ax) * dx + (py - ay) * dy) / dd
    if u < 0.0:
        return 0.0
    if u > 1.0:
        return 1.0
    return u


cdef inline double dist_ps(double px, double py, double ax, double ay,
                           double bx, double by) noexcept nogil:
    cdef double u = closest_u(px, py, ax, ay, bx, by)
    return hypot(ax + u * (bx - ax) - px, ay + u * (by - ay) - py)


cdef inline double lens_f(Nb* nb, double u, double ax, double ay, double dx, double dy) noexcept nogil:
    cdef double px = ax + u * dx, py = ay + u * dy
    cdef double f1 = nb.r[0] - hypot(px - nb.cx[0], py - nb.cy[0])
    cdef double f2 = nb.r[1] - hypot(px - nb.cx[1], py - nb.cy[1])
    return f1 if f1 < f2 else f2


cdef double seg_depth(Nb* nb, double ax, double ay, double bx, double by) noexcept nogil:
    cdef double a, b, lo, hi, x1, x2, f1, f2, best, dx, dy
    cdef int it
    if nb.combine == SINGLE:
        return nb.r[0] - dist_ps(nb.cx[0], nb.cy[0], ax, ay, bx, by)
    if nb.combine == UNION:
        a = nb.r[0] - dist_ps(nb.cx[0], nb.cy[0], ax, ay, bx, by)
        b = nb.r[1] - dist_ps(nb.cx[1], nb.cy[1], ax, ay, bx, by)
        return a if a > b else b
    dx = bx - ax
    dy = by - ay
    a = closest_u(nb.cx[0], nb.cy[0], ax, ay, bx, by)
    b = closest_u(nb.cx[1], nb.cy[1], ax, ay, bx, by)
    lo = a if a <= b else b
    hi = b if a <= b else a
    best = lens_f(nb, lo, ax, ay, dx, dy)
    f1 = lens_f(nb, hi, ax, ay, dx, dy)
    if f1 > best:
        best = f1
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1 = lens_f(nb, x1, ax, ay, dx, dy)
    f2 = lens_f(nb, x2, ax, ay, dx, dy)
    for it in range(48):
        if hi - lo < 1e-13:
            break
        if f1 < f2:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = lens_f(nb, x2, ax, ay, dx, dy)
        else:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = lens_f(nb, x1, ax, ay, dx, dy)
    if f1 > best:
        best = f1
    if f2 > best:
        best = f2
    return best


cdef struct Search:
    const double* segs
    int n
    int i
    int j
    double beta
    bint circle
    bint closed
    double eps
    int m
    int mode
    double lip
    double len1
    double len2


cdef inline void gens(Search* S, int k1, int k2, double* v) noexcept nogil:
    cdef const double* s1 = S.segs + 4 * S.i
    cdef const double* s2 = S.segs + 4 * S.j
    cdef double t1 = <double>k1 / <double>S.m
    cdef double t2 = <double>k2 / <double>S.m
    v[0] = s1[0] + t1 * (s1[2] - s1[0])
    v[1] = s1[1] + t1 * (s1[3] - s1[1])
    v[2] = s2[0] + t2 * (s2[2] - s2[0])
    v[3] = s2[1] + t2 * (s2[3] - s2[1])


cdef int mark_blockers(Search* S, int k1, int k2, int* cnt) noexcept nogil:
    """Increment cnt[k] for every blocker k of the sample; return how many block."""
    cdef double v[4]
    cdef Nb nb
    cdef double px, py, r
    cdef const double* s
    cdef int k, hits = 0
    gens(S, k1, k2, v)
    if S.mode == 1:
        px = 0.5 * (v[0] + v[2])
        py = 0.5 * (v[1] + v[3])
        r = 0.5 * hypot(v[2] - v[0], v[3] - v[1])
    else:
        make_nb(v[0], v[1], v[2], v[3], S.beta, S.circle, &nb)
    for k in range(S.n):
        if k == S.i or k == S.j:
            continue
        s = S.segs + 4 * k
        if S.mode == 1:
            if dist_ps(px, py, s[0], s[1], s[2], s[3]) <= r + S.eps:
                cnt[k] += 1
                hits += 1
        elif seg_hits(&nb, S.closed, S.eps, s[0], s[1], s[2], s[3]):
            cnt[k] += 1
            hits += 1
    return hits


cdef bint certifies(Search* S, int k, int k1, int k2, double rho) noexcept nogil:
    cdef double v[4]
    cdef Nb nb
    cdef double px, py, r
    cdef const double* s = S.segs + 4 * k
    gens(S, k1, k2, v)
    if S.mode == 1:
        px = 0.5 * (v[0] + v[2])
        py = 0.5 * (v[1] + v[3])
        r = 0.5 * hypot(v[2] - v[0], v[3] - v[1])
        return dist_ps(px, py, s[0], s[1], s[2], s[3]) - r + rho < -S.eps
    make_nb(v[0], v[1], v[2], v[3], S.beta, S.circle, &nb)
    return seg_depth(&nb, s[0], s[1], s[2], s[3]) - S.lip * rho > 2.0 * S.eps


cdef int run_search(Search* S, int* out) noexcept nogil:
    """BFS over lattice cells; returns 1 and writes out[0:2] on success, 0 if none, -1 on OOM."""
    cdef int cap = 1024, head = 0, tail = 0
    cdef int* q = <int*>malloc(4 * cap * sizeof(int))
    cdef int* cnt = <int*>malloc((S.n + 1) * sizeof(int))
    cdef int* nq
    cdef int i0, i1, j0, j1, im, jm, ns, a, b, c, k, pruned, ih, jh, nih, njh
    cdef int si[5]
    cdef int sj[5]
    cdef int hs[4]
    cdef int js[4]
    cdef double rho
    cdef bint dup
    if q == NULL or cnt == NULL:
        free(q)
        free(cnt)
        return -1
    q[0] = 0
    q[1] = S.m
    q[2] = 0
    q[3] = S.m
    tail = 1
    while head < tail:
        i0 = q[4 * head]
        i1 = q[4 * head + 1]
        j0 = q[4 * head + 2]
        j1 = q[4 * head + 3]
        head += 1
        im = (i0 + i1) // 2
        jm = (j0 + j1) // 2
        si[0] = im
        sj[0] = jm
        ns = 1
        for c in range(4):
            a = i0 if c < 2 else i1
            b = j0 if (c % 2) == 0 else j1
            dup = False
            for k in range(ns):
                if si[k] == a and sj[k] == b:
                    dup = True
            if not dup:
                si[ns] = a
                sj[ns] = b
                ns += 1
        memset(cnt, 0, S.n * sizeof(int))
        for c in range(ns):
            if mark_blockers(S, si[c], sj[c], cnt) == 0:
                out[0] = si[c]
                out[1] = sj[c]
                free(q)
                free(cnt)
                return 1
        if i1 - i0 <= 1 and j1 - j0 <= 1:
            continue
        rho = ((im - i0 if im - i0 > i1 - im else i1 - im) * S.len1
               + (jm - j0 if jm - j0 > j1 - jm else j1 - jm) * S.len2) / <double>S.m
        pruned = 0
        for k in range(S.n):
            if cnt[k] == ns and certifies(S, k, im, jm, rho):
                pruned = 1
                break
        if pruned:
            continue
        if i1 - i0 > 1:
            hs[0] = i0
            hs[1] = im
            hs[2] = im
            hs[3] = i1
            nih = 2
        else:
            hs[0] = i0
            hs[1] = i1
            nih = 1
        if j1 - j0 > 1:
            js[0] = j0
            js[1] = jm
            js[2] = jm
            js[3] = j1
            njh = 2
        else:
            js[0] = j0
            js[1] = j1
            njh = 1
        # compact the consumed prefix before growing
        if tail + 4 > cap:
            if head > 0:
                for k in range(4 * head, 4 * tail):
                    q[k - 4 * head] = q[k]
                tail -= head
                head = 0
            if tail + 4 > cap:
                cap *= 2
                nq = <int*>realloc(q, 4 * cap * sizeof(int))
                if nq == NULL:
                    free(q)
                    free(cnt)
                    return -1
                q = nq
        for ih in range(nih):
            for jh in range(njh):
                q[4 * tail] = hs[2 * ih]
                q[4 * tail + 1] = hs[2 * ih + 1]
                q[4 * tail + 2] = js[2 * jh]
                q[4 * tail + 3] = js[2 * jh + 1]
                tail += 1
    free(q)
    free(cnt)
    return 0


def lipschitz_constant(double beta):
    if beta == 1.0:
        return 1.0
    if beta < 1.0:
        return 1.0 / beta
    return beta


def find_witness_lattice(segs, int i, int j, double beta, bint circle, bint closed,
                         double eps, int m, int mode=MODE_SKELETON, trace=None):
    """First free lattice point ``(k1, k2)`` in subdivision order, or None.

    ``trace`` is accepted for signature compatibility and ignored.
    """
    cdef double[:, ::1] arr = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    cdef Search S
    cdef int out[2]
    cdef int rc
    S.n = arr.shape[0]
    if S.n == 0 or not (0 <= i < S.n and 0 <= j < S.n) or i == j or m < 1:
        raise ValueError("invalid search arguments")
    S.segs = &arr[0, 0]
    S.i = i
    S.j = j
    S.beta = beta
    S.circle = circle
    S.closed = closed
    S.eps = eps
    S.m = m
    S.mode = mode
    S.lip = lipschitz_constant(beta)
    S.len1 = hypot(arr[i, 2] - arr[i, 0], arr[i, 3] - arr[i, 1])
    S.len2 = hypot(arr[j, 2] - arr[j, 0], arr[j, 3] - arr[j, 1])
    with nogil:
        rc = run_search(&S, out)
    if rc < 0:
        raise MemoryError()
    if rc == 0:
        return None
    return (out[0], out[1])


def nearest_labels(segs, xs, ys):
    """Row-major (len(ys), len(xs)) array of nearest-site indices; ties go to the lowest index."""
    cdef double[:, ::1] s = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    cdef double[::1] X = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] Y = np.ascontiguousarray(ys, dtype=np.float64)
    out = np.zeros((Y.shape[0], X.shape[0]), dtype=np.int32)
    cdef int[:, ::1] lab = out
    cdef Py_ssize_t r, c, k, n = s.shape[0]
    cdef double px, py, best, d2, u, dx, dy, dd, qx, qy
    with nogil:
        for r in range(Y.shape[0]):
            py = Y[r]
            for c in range(X.shape[0]):
                px = X[c]
                best = INFINITY
                for k in range(n):
                    dx = s[k, 2] - s[k, 0]
                    dy = s[k, 3] - s[k, 1]
                    dd = dx * dx + dy * dy
                    if dd == 0.0:
                        u = 0.0
                    else:
                        u = ((px - s[k, 0]) * dx + (py - s[k, 1]) * dy) / dd
                        if u < 0.0:
                            u = 0.0
                        elif u > 1.0:
                            u = 1.0
                    qx = s[k, 0] + u * dx - px
                    qy = s[k, 1] + u * dy - py
                    d2 = qx * qx + qy * qy
                    if d2 < best:
                        best = d2
                        lab[r, c] = <int>k
    return out
