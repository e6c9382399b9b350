"""Compare the compiled and pure-Python kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--scenes 10] [--repeat 3]

Both backends must return identical answers; the script stops if they differ.
"""

import argparse
import random
from itertools import combinations
import time

import numpy as np

from segskel import kernels
from segskel.delaunay import grid_voronoi
from segskel.neighborhoods import BetaSpec
from segskel.scenes import random_scene


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_lattice(scenes, backend, repeat, m=256):
    """Witness search over every site pair at beta 0.5, 1 and 2."""
    specs = [BetaSpec(0.5), BetaSpec(1.0), BetaSpec(2.0)]
    mod = kernels.get_backend(backend)

    def work():
        out = []
        for S in scenes:
            arr = S.as_array()
            for spec in specs:
                for i, j in combinations(range(len(S)), 2):
                    out.append(
                        mod.find_witness_lattice(
                            arr, i, j, spec.beta, False, spec.closed, S.eps, m, kernels.MODE_SKELETON
                        )
                    )
        return out

    return _best(work, repeat)


def bench_labels(scenes, backend, repeat, resolution=256):
    def work():
        return [grid_voronoi(S, resolution, backend).labels for S in scenes]

    return _best(work, repeat)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenes", type=int, default=10)
    ap.add_argument("--sites", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    try:
        kernels.get_backend("cython")
    except ImportError:
        raise SystemExit("compiled kernels are not built; run: pip install -e . --no-build-isolation")

    rng = random.Random(args.seed)
    scenes = [random_scene(args.sites, rng) for _ in range(args.scenes)]
    print(f"{args.scenes} scenes of {args.sites} sites, best of {args.repeat}")
    print(f"{'workload':<22}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, bench in (("lattice search", bench_lattice), ("voronoi labels", bench_labels)):
        t_py, out_py = bench(scenes, "python", args.repeat)
        t_cy, out_cy = bench(scenes, "cython", args.repeat)
        same = all(
            np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b for a, b in zip(out_py, out_cy)
        )
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<22}{t_py:>12.3f}{t_cy:>12.3f}{t_py / t_cy:>9.1f}x")
    print(f"active backend: {kernels.BACKEND}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
