"""Reference scenes and a random general-position scene generator."""

from __future__ import annotations

import math
import random
from typing import Optional

from .geom import Segment, SegmentSet, validate_general_position


def stacked_triple() -> SegmentSet:
    """Three horizontal unit segments one above the other.

    The middle one overhangs the others by 0.1 on each side so that no three
    endpoints are collinear; the outer pair still cannot see each other past
    it, at any distance.
    """
    return SegmentSet(
        (
            Segment.from_coords(0.0, 0.0, 1.0, 0.0),
            Segment.from_coords(-0.1, 1.0, 1.1, 1.0),
            Segment.from_coords(0.0, 2.0, 1.0, 2.0),
        )
    )


SQUARE_ETA = 0.05
SQUARE_STUB = 0.02


def near_point_square() -> SegmentSet:
    """Four short segments at the corners of a unit square.

    Corner 0 is pulled outwards along the diagonal so that 1-3 is the only
    Delaunay diagonal, and every stub points away from the square.
    """
    e, h = SQUARE_ETA, SQUARE_STUB
    a20, a50, a30 = math.radians(20.0), math.radians(50.0), math.radians(30.0)
    corners = [
        ((-e, -e), (-math.cos(a30), -math.sin(a30))),
        ((1.0, 0.0), (math.cos(a20), -math.sin(a20))),
        ((1.0, 1.0), (math.cos(a50), math.sin(a50))),
        ((0.0, 1.0), (-math.sin(a20), math.cos(a20))),
    ]
    return SegmentSet(
        tuple(Segment.from_coords(x, y, x + h * ux, y + h * uy) for (x, y), (ux, uy) in corners)
    )


def random_scene(
    n: int,
    rng: Optional[random.Random] = None,
    min_len: float = 0.05,
    max_len: float = 0.25,
    max_tries: int = 10000,
) -> SegmentSet:
    """``n`` random disjoint segments in the unit box with no three collinear endpoints."""
    rng = rng or random.Random()
    for _ in range(max_tries):
        segs = []
        for _ in range(n):
            L = rng.uniform(min_len, max_len)
            a = rng.uniform(0.0, math.pi)
            cx = rng.uniform(L / 2, 1.0 - L / 2)
            cy = rng.uniform(L / 2, 1.0 - L / 2)
            dx, dy = 0.5 * L * math.cos(a), 0.5 * L * math.sin(a)
            segs.append(Segment.from_coords(cx - dx, cy - dy, cx + dx, cy + dy))
        S = SegmentSet(tuple(segs))
        if _well_separated(S) and validate_general_position(S) is None:
            return S
    raise RuntimeError(f"could not place {n} segments in general position")


def _well_separated(S: SegmentSet, gap: float = 1e-3) -> bool:
    from .geom import segments_distance

    return all(
        segments_distance(S[i], S[j]) > gap for i in range(len(S)) for j in range(i + 1, len(S))
    )


def random_point_scene(n: int, rng: Optional[random.Random] = None, length: float = 1e-9) -> tuple[list, SegmentSet]:
    """Random points and the matching set of tiny segments (point-site mode)."""
    rng = rng or random.Random()
    while True:
        pts = [(rng.random(), rng.random()) for _ in range(n)]
        segs = []
        for x, y in pts:
            a = rng.uniform(0.0, 2.0 * math.pi)
            segs.append(Segment.from_coords(x, y, x + length * math.cos(a), y + length * math.sin(a)))
        S = SegmentSet(tuple(segs), allow_degenerate=True)
        if validate_general_position(S) is None and _well_separated(S, 1e-3):
            return pts, S
