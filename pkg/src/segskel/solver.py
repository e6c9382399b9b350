"""Edge decisions for beta-skeletons of segment sets.

An edge (i, j) exists when some generator pair (q_i(t1), q_j(t2)) with
t1, t2 in [0, 1] has a neighborhood that no other site meets.  The pair space
is searched on a lattice of pitch ``epsilon`` by an adaptive subdivision that
only discards cells certified blocked (see :mod:`segskel._pykernels`), so:

* an emitted witness is always exact (it is re-verified here), and
* a missing edge means no lattice point of pitch ``epsilon`` is free.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import kernels
from .geom import SegmentSet, param_point, require_general_position
from .graph import GeneratorPair, SkeletonGraph
from .neighborhoods import CIRCLE, BetaSpec, make_neighborhood, segment_intersects_nbhd

DEFAULT_EPSILON = 1.0 / 256


class WitnessError(RuntimeError):
    """A search result failed exact re-verification."""


@dataclass(frozen=True)
class FreeRegionCell:
    t1_lo: float
    t1_hi: float
    t2_lo: float
    t2_hi: float
    status: str  # "free" | "blocked" | "mixed"


def lattice_size(epsilon: float) -> int:
    """Number of lattice intervals per axis for subdivision resolution ``epsilon``."""
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    return max(1, math.ceil(1.0 / epsilon - 1e-9))


def verify_witness(S: SegmentSet, i: int, j: int, spec: BetaSpec, w: GeneratorPair) -> bool:
    """Exact check that the neighborhood generated by ``w`` avoids every other site."""
    N = make_neighborhood(param_point(S[i], w.t1), param_point(S[j], w.t2), spec)
    return not any(segment_intersects_nbhd(N, s) for k, s in enumerate(S.sites) if k not in (i, j))


def find_witness(
    S: SegmentSet,
    i: int,
    j: int,
    spec: BetaSpec,
    epsilon: float = DEFAULT_EPSILON,
    backend: Optional[str] = None,
) -> Optional[GeneratorPair]:
    if i == j:
        raise ValueError("find_witness needs two distinct sites")
    m = lattice_size(epsilon)
    hit = kernels.find_witness_lattice(
        S.as_array(), i, j, spec.beta, spec.variant == CIRCLE, spec.closed, S.eps, m,
        kernels.MODE_SKELETON, backend=backend,
    )
    if hit is None:
        return None
    w = GeneratorPair(hit[0] / m, hit[1] / m)
    if not verify_witness(S, i, j, spec, w):
        raise WitnessError(f"witness {w} for ({i}, {j}) failed re-verification")
    return w


def free_region_cells(
    S: SegmentSet, i: int, j: int, spec: BetaSpec, epsilon: float = DEFAULT_EPSILON
) -> list[FreeRegionCell]:
    """Cells visited by the subdivision search, in processing order (pure-Python engine)."""
    m = lattice_size(epsilon)
    trace: list = []
    kernels.get_backend("python").find_witness_lattice(
        S.as_array(), i, j, spec.beta, spec.variant == CIRCLE, spec.closed, S.eps, m,
        kernels.MODE_SKELETON, trace=trace,
    )
    return [FreeRegionCell(a / m, b / m, c / m, d / m, st) for a, b, c, d, st in trace]


def candidate_pairs(
    S: SegmentSet, spec: BetaSpec, dt: Optional[SkeletonGraph] = None
) -> list[tuple[int, int]]:
    """Pairs worth testing: the DT(S) edges for beta >= 1, every pair otherwise."""
    if spec.beta >= 1.0:
        if dt is None:
            from .delaunay import delaunay_graph

            dt = delaunay_graph(S)
        return dt.sorted_edges()
    return list(combinations(range(len(S)), 2))


def beta_skeleton(
    S: SegmentSet,
    spec: BetaSpec,
    epsilon: float = DEFAULT_EPSILON,
    dt: Optional[SkeletonGraph] = None,
    backend: Optional[str] = None,
    workers: Optional[int] = None,
    validate: bool = True,
) -> SkeletonGraph:
    if validate:
        require_general_position(S)
    pairs = candidate_pairs(S, spec, dt)

    def decide(pair):
        return find_witness(S, pair[0], pair[1], spec, epsilon, backend)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(decide, pairs))
    else:
        results = [decide(p) for p in pairs]
    G = SkeletonGraph(len(S))
    for (i, j), w in zip(pairs, results):
        if w is not None:
            G.add_edge(i, j, w)
    return G
