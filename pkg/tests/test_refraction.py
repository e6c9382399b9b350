import dataclasses
import math
import random

import pytest

from segskel.geom import GeometryError, Segment, SegmentSet, angle_at, cross, param_point
from segskel.neighborhoods import CIRCLE, BetaSpec, delta_of_beta
from segskel.refraction import (
    DISC1,
    DISC2,
    FULL,
    BlockedRegionQuery,
    aux_segment,
    blocked,
    circle_c1,
    extreme_t,
    refraction_coeffs,
    t2_of,
)

R1 = (
    Segment.from_coords(0, 0, 1, 0),
    Segment.from_coords(0, 1, 1, 1),
    Segment.from_coords(0, 2, 1, 2),
)


def rseg(rng):
    return Segment.from_coords(*(rng.uniform(-1, 1) for _ in range(4)))


def test_r1_orthogonal_refraction():
    c = refraction_coeffs(*R1, math.pi / 2, "ccw")
    t2 = t2_of(c, 0.0, 0.5)
    assert t2 == pytest.approx(-1.5)
    q, q1, q2 = (0.5, 1.0), (0.0, 0.0), param_point(R1[2], t2)
    assert (q1[0] - q[0]) * (q2[0] - q[0]) + (q1[1] - q[1]) * (q2[1] - q[1]) == pytest.approx(0.0, abs=1e-12)


def test_r1_parallel_ray_and_wrong_side():
    c = refraction_coeffs(*R1, math.pi / 2, "cw")
    assert t2_of(c, 0.0, 0.0) is None
    assert t2_of(c, 0.0, 0.5) is None


def test_right_angle_substitution():
    c = refraction_coeffs(*R1, math.pi / 2, "cw")
    assert (c.D, c.E, c.F) == pytest.approx((c.A2, c.B2, c.C2), abs=1e-15)


def test_ccw_is_transposed_rotation():
    rng = random.Random(5)
    for _ in range(50):
        s1, s, s2 = rseg(rng), rseg(rng), rseg(rng)
        delta = rng.uniform(0.1, 3.0)
        cw = refraction_coeffs(s1, s, s2, delta, "cw")
        ccw = refraction_coeffs(s1, s, s2, delta, "ccw")
        t1, t = rng.random(), rng.random()
        wx = cw.A1 * t + cw.B1 * t1 + cw.C1
        wy = cw.A2 * t + cw.B2 * t1 + cw.C2
        th = math.pi - delta
        c, sn = math.cos(th), math.sin(th)
        assert cw.ray(t1, t) == pytest.approx((c * wx + sn * wy, -sn * wx + c * wy), abs=1e-12)
        assert ccw.ray(t1, t) == pytest.approx((c * wx - sn * wy, sn * wx + c * wy), abs=1e-12)


def test_refraction_validates():
    with pytest.raises(GeometryError):
        refraction_coeffs(*R1, 0.0)
    with pytest.raises(GeometryError):
        refraction_coeffs(*R1, math.pi)
    with pytest.raises(GeometryError):
        refraction_coeffs(*R1, 1.0, "sideways")
    with pytest.raises(GeometryError):
        refraction_coeffs(R1[0], Segment.from_coords(1, 1, 1, 1), R1[2], 1.0)


def test_hyperbola_point_lies_on_refracted_ray():
    rng = random.Random(9)
    hits = 0
    for _ in range(2000):
        s1, s, s2 = rseg(rng), rseg(rng), rseg(rng)
        c = refraction_coeffs(s1, s, s2, rng.uniform(0.05, 3.1), rng.choice(["cw", "ccw"]))
        t1, t = rng.random(), rng.random()
        t2 = t2_of(c, t1, t)
        if t2 is None:
            continue
        hits += 1
        q, q2 = param_point(s, t), param_point(s2, t2)
        ux, uy = c.ray(t1, t)
        vx, vy = q2.x - q.x, q2.y - q.y
        assert abs(cross(ux, uy, vx, vy)) <= 1e-8 * max(1.0, math.hypot(ux, uy) * math.hypot(vx, vy))
        assert ux * vx + uy * vy >= -1e-12
    assert hits > 200


def test_extreme_t_moebius_and_negative_discriminant():
    c = refraction_coeffs(*R1, 1.0)
    assert extreme_t(dataclasses.replace(c, M=0.0), 0.3) == []
    # MN t^2 + 2 M p3 t + (p1 p3 - N p2) with a negative discriminant
    fake = dataclasses.replace(c, M=1.0, N=1.0, p1=(0.0, 0.0, 0.0), p2=(-1.0, 0.0, 0.0), p3=(0.0, 0.0, 0.0))
    assert extreme_t(fake, 0.0) == []


def test_extreme_t_is_stationary():
    rng = random.Random(13)
    checked = 0
    h = 1e-5
    for _ in range(3000):
        s1, s, s2 = rseg(rng), rseg(rng), rseg(rng)
        c = refraction_coeffs(s1, s, s2, rng.uniform(0.2, 2.9), rng.choice(["cw", "ccw"]))
        t1 = rng.random()
        for t in extreme_t(c, t1):
            vals = [t2_of(c, t1, t + d) for d in (-h, 0.0, h)]
            if None in vals or abs(t) > 10:
                continue
            scale = 1.0 + abs(vals[1])
            assert abs(vals[0] - vals[1]) < 1e-6 * scale
            assert abs(vals[2] - vals[1]) < 1e-6 * scale
            checked += 1
    assert checked > 50


def test_aux_segment():
    assert aux_segment(Segment.from_coords(0, 2, 2, 2), (0, 0), 2.0) == Segment.from_coords(0, 1, 1, 1)
    s = Segment.from_coords(0.3, 0.7, 1.9, -2)
    assert aux_segment(s, (5, 5), 1.0) == s
    with pytest.raises(GeometryError):
        aux_segment(s, (0, 0), 0.5)


def test_aux_segment_matches_c1():
    # q on C1 iff its image under the 1/beta homothety about q1 sees q1 q2 at a right angle
    rng = random.Random(17)
    for _ in range(200):
        beta = rng.uniform(1.0, 4.0)
        q1 = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        q2 = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        C = circle_c1(q1, q2, beta)
        th = rng.uniform(0, 2 * math.pi)
        q = (C.center.x + C.radius * math.cos(th), C.center.y + C.radius * math.sin(th))
        if math.dist(q, q1) < 1e-3:
            continue
        s = Segment.from_coords(*q, q[0] + 0.1, q[1])
        w = aux_segment(s, q1, beta).a
        assert angle_at(w, q1, q2) == pytest.approx(math.pi / 2, abs=1e-7)


def stacked(blocker):
    return SegmentSet((R1[0], blocker, R1[2]))


def test_blocked_examples():
    q = BlockedRegionQuery(0, 1, 2, BetaSpec(1.0))
    assert blocked(stacked(R1[1]), q, 0.5, 0.5)
    assert not blocked(stacked(Segment.from_coords(10, 10, 11, 10)), q, 0.5, 0.5)


def lune_scene(blocker):
    # generators (0,0) and (1,0) at t1 = t2 = 0
    return SegmentSet(
        (Segment.from_coords(0, 0, 0, -1), blocker, Segment.from_coords(1, 0, 1, -1))
    )


def test_blocked_single_disc_sides():
    S = lune_scene(Segment.from_coords(1.8, -0.3, 1.8, 0.3))
    spec = BetaSpec(2.0)
    assert blocked(S, BlockedRegionQuery(0, 1, 2, spec, DISC1), 0.0, 0.0)
    assert not blocked(S, BlockedRegionQuery(0, 1, 2, spec, DISC2), 0.0, 0.0)
    assert not blocked(S, BlockedRegionQuery(0, 1, 2, spec, FULL), 0.0, 0.0)


def test_both_discs_hit_without_the_lune():
    S = lune_scene(Segment.from_coords(-0.2, 0.95, 1.2, 0.95))
    spec = BetaSpec(2.0)
    assert blocked(S, BlockedRegionQuery(0, 1, 2, spec, DISC1), 0.0, 0.0)
    assert blocked(S, BlockedRegionQuery(0, 1, 2, spec, DISC2), 0.0, 0.0)
    assert not blocked(S, BlockedRegionQuery(0, 1, 2, spec, FULL), 0.0, 0.0)


def test_query_validation():
    with pytest.raises(ValueError):
        BlockedRegionQuery(0, 0, 2, BetaSpec(1.0))
    with pytest.raises(ValueError):
        BlockedRegionQuery(0, 1, 2, BetaSpec(1.0), "disc3")


def test_blocked_symmetric_for_circles():
    rng = random.Random(23)
    for _ in range(500):
        S = SegmentSet(tuple(rseg(rng) for _ in range(3)))
        spec = BetaSpec(rng.choice([1.0, 1.5, 2.5]), CIRCLE)
        t1, t2 = rng.random(), rng.random()
        a = blocked(S, BlockedRegionQuery(0, 1, 2, spec), t1, t2)
        b = blocked(S, BlockedRegionQuery(2, 1, 0, spec), t2, t1)
        assert a == b


def test_refracted_pairs_are_blocked():
    rng = random.Random(29)
    hits = 0
    for _ in range(3000):
        s1, s, s2 = rseg(rng), rseg(rng), rseg(rng)
        beta = rng.uniform(0.2, 1.0)
        spec = BetaSpec(beta)
        c = refraction_coeffs(s1, s, s2, delta_of_beta(spec), rng.choice(["cw", "ccw"]))
        t1, t = rng.random(), rng.random()
        t2 = t2_of(c, t1, t)
        if t2 is None or abs(t2) > 1e6:
            continue
        if math.dist(param_point(s1, t1), param_point(s2, t2)) < 1e-6:
            continue
        hits += 1
        assert blocked(SegmentSet((s1, s, s2)), BlockedRegionQuery(0, 1, 2, spec), t1, t2)
    assert hits > 300
