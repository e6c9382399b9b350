import math
import random

import pytest

from segskel.geom import Segment, SegmentSet
from segskel.neighborhoods import CIRCLE, LUNE, BetaSpec
from segskel.oracle import (
    OracleConfig,
    oracle_edge,
    oracle_free_mask,
    oracle_skeleton,
    oracle_witness,
    point_delaunay_oracle,
    point_skeleton_oracle,
)
from segskel.scenes import random_point_scene, random_scene

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
SIDES = {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_config():
    assert OracleConfig().grid == 256
    with pytest.raises(ValueError):
        OracleConfig(grid=1)


def test_stacked_outer_pair(stacked):
    mask = oracle_free_mask(stacked, 0, 2, BetaSpec(1.0))
    assert mask.shape == (257, 257) and not mask.any()
    assert not oracle_edge(stacked, 0, 2, BetaSpec(1.0))
    assert oracle_edge(stacked, 0, 1, BetaSpec(1.0))


def test_two_sites():
    S = SegmentSet((Segment.from_coords(0, 0, 1, 0), Segment.from_coords(0, 1, 1, 1.1)))
    for beta in (0.5, 1.0, 3.0):
        assert oracle_edge(S, 0, 1, BetaSpec(beta))
    assert oracle_witness(S, 0, 1, BetaSpec(1.0), OracleConfig(grid=4)) == (0.0, 0.0)


def test_point_square_examples():
    assert point_skeleton_oracle(SQUARE, BetaSpec(2.0, LUNE, "open")).edge_set() == SIDES
    assert point_skeleton_oracle(SQUARE, BetaSpec(1.0)).edge_set() == SIDES
    assert point_skeleton_oracle([(0, 0), (3, 1)], BetaSpec(1.5)).edge_set() == {(0, 1)}
    # open diameter discs let the corners on their boundary through
    assert len(point_skeleton_oracle(SQUARE, BetaSpec(1.0, closure="open"))) == 6


def test_point_oracles_reject_duplicates():
    with pytest.raises(ValueError):
        point_skeleton_oracle([(0, 0), (0, 0), (1, 1)], BetaSpec(1.0))
    with pytest.raises(ValueError):
        point_delaunay_oracle([(0, 0), (1, 1), (1, 1)])


def test_point_delaunay_small():
    assert point_delaunay_oracle([(0, 0), (1, 0)]) == {(0, 1)}
    assert point_delaunay_oracle([(0, 0), (1, 0), (0.3, 0.8)]) == {(0, 1), (0, 2), (1, 2)}


def test_point_graph_hierarchy(rng):
    for _ in range(30):
        pts = [(rng.random(), rng.random()) for _ in range(rng.randint(3, 9))]
        dt = point_delaunay_oracle(pts)
        gg = point_skeleton_oracle(pts, BetaSpec(1.0)).edge_set()
        rn = point_skeleton_oracle(pts, BetaSpec(2.0)).edge_set()
        assert rn <= gg <= dt


def _similar(S, rng):
    th, k = rng.uniform(0, 2 * math.pi), rng.uniform(0.2, 5)
    tx, ty = rng.uniform(-10, 10), rng.uniform(-10, 10)
    c, s = math.cos(th), math.sin(th)

    def f(p):
        return (k * (c * p.x - s * p.y) + tx, k * (s * p.x + c * p.y) + ty)

    return SegmentSet(tuple(Segment.from_coords(*f(q.a), *f(q.b)) for q in S))


def test_invariant_under_similarity_and_reordering(rng):
    cfg = OracleConfig(grid=64)
    for _ in range(4):
        S = random_scene(5, rng)
        spec = BetaSpec(rng.choice([0.6, 1.0, 1.8]), rng.choice([LUNE, CIRCLE]))
        base = oracle_skeleton(S, spec, cfg).edge_set()
        assert oracle_skeleton(_similar(S, rng), spec, cfg).edge_set() == base
        perm = list(range(5))
        rng.shuffle(perm)
        T = SegmentSet(tuple(S[p] for p in perm))
        mapped = {tuple(sorted((perm[i], perm[j]))) for i, j in oracle_skeleton(T, spec, cfg).edge_set()}
        assert mapped == base


def test_tiny_segments_match_points(rng):
    cfg = OracleConfig(grid=8)
    for _ in range(10):
        pts, S = random_point_scene(rng.randint(3, 7), rng)
        for beta in (0.5, 1.0, 2.0):
            spec = BetaSpec(beta)
            assert oracle_skeleton(S, spec, cfg).edge_set() == point_skeleton_oracle(pts, spec).edge_set()
