import math
import random

import numpy as np
import pytest

from segskel.delaunay import UndersamplingWarning, delaunay_graph, grid_voronoi
from segskel.gabriel import gg_graph
from segskel.geom import Segment, SegmentSet, dist_point_segment
from segskel.oracle import point_delaunay_oracle
from segskel.scenes import random_point_scene, random_scene


def seg(*c):
    return Segment.from_coords(*c)


def test_grid_single_site():
    gv = grid_voronoi(SegmentSet((seg(0, 0, 1, 0.5),)), 16)
    assert gv.labels.shape == (17, 17) and gv.labels.size == 289
    assert (gv.labels == 0).all()


def test_grid_errors():
    with pytest.raises(ValueError):
        grid_voronoi(SegmentSet(()), 32)
    with pytest.raises(ValueError):
        grid_voronoi(SegmentSet((seg(0, 0, 1, 0),)), 8)


def test_grid_mirror_split():
    S = SegmentSet((seg(-1, -1, -1, 1), seg(1, -1, 1, 1)))
    gv = grid_voronoi(S, 64)
    X = np.broadcast_to(gv.xs, gv.labels.shape)
    assert (gv.labels[X < -1e-9] == 0).all()
    assert (gv.labels[X > 1e-9] == 1).all()


def test_grid_labels_are_nearest(rng):
    S = random_scene(6, rng)
    gv = grid_voronoi(S, 24)
    for r, y in enumerate(gv.ys):
        for c, x in enumerate(gv.xs):
            d = [dist_point_segment((x, y), s) for s in S]
            assert gv.labels[r, c] == d.index(min(d))


def test_triangle_of_short_segments():
    S = SegmentSet((seg(0, 0, 0.1, 0.02), seg(1, 0, 1.05, 0.1), seg(0.5, 0.9, 0.45, 1.0)))
    assert delaunay_graph(S).sorted_edges() == [(0, 1), (0, 2), (1, 2)]


def test_stacked(stacked):
    assert delaunay_graph(stacked).sorted_edges() == [(0, 1), (1, 2)]


def test_square_matches_point_delaunay(square):
    corners = [s.a for s in square]
    assert len(point_delaunay_oracle(corners)) == 5
    assert delaunay_graph(square).edge_set() == point_delaunay_oracle(corners)


def _check_certificates(S, G):
    for (i, j), (c, r) in G.certificates.items():
        assert dist_point_segment(c, S[i]) == pytest.approx(r, abs=1e-9)
        assert dist_point_segment(c, S[j]) == pytest.approx(r, abs=1e-9)
        for k, s in enumerate(S):
            if k not in (i, j):
                assert dist_point_segment(c, s) > r


def test_certificates_are_empty_tangent_discs(rng):
    for _ in range(5):
        S = random_scene(8, rng)
        G = delaunay_graph(S, 256)
        assert set(G.certificates) == G.edge_set()
        _check_certificates(S, G)


def test_gabriel_inside_delaunay(rng):
    for _ in range(10):
        S = random_scene(rng.randint(4, 9), rng)
        assert gg_graph(S).edge_set() <= delaunay_graph(S).edge_set()


def test_order_independent(rng):
    for _ in range(5):
        S = random_scene(7, rng)
        perm = list(range(len(S)))
        rng.shuffle(perm)
        T = SegmentSet(tuple(S[p] for p in perm))
        mapped = {tuple(sorted((perm[i], perm[j]))) for i, j in delaunay_graph(T).edge_set()}
        assert mapped == delaunay_graph(S).edge_set()


def test_refining_keeps_edges(rng):
    for _ in range(5):
        S = random_scene(8, rng)
        assert delaunay_graph(S, 96).edge_set() <= delaunay_graph(S, 192).edge_set()


def test_tiny_segments_give_point_delaunay(rng):
    for _ in range(20):
        pts, S = random_point_scene(rng.randint(3, 8), rng)
        assert delaunay_graph(S).edge_set() == point_delaunay_oracle(pts)


def test_undersampling_warning():
    sites = [seg(0, 0, 100, 0)] + [seg(50 + 0.01 * k, 50, 50 + 0.01 * k + 0.002, 50.003) for k in range(4)]
    with pytest.warns(UndersamplingWarning):
        delaunay_graph(SegmentSet(tuple(sites)), 16)
