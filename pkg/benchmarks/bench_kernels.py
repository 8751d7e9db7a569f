"""Time the numba kernels against the numpy fallback on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload is run with both backends; results are compared for equality
before timings are reported.
"""
from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from critarrow import _kernels
from critarrow.conecore import SimplicialCone, _candidates, parallelepiped_points
from critarrow.critarrows import c_min, delta_cone, diameter_bound

TABLE_CONE = ((1, 0, 0, 0), (0, 1, 3, 1), (3, 3, 1, 0), (1, 3, 3, 3))
TABLE_W = (2, 3, 4, 2)
WIDE_CONE = ((1, 0, 0), (0, 1, 0), (-1237, -2111, 3000))


def crit_sweep(backend):
    """Unpruned crit sweep over the full [-D', D']^4 box of a 4-dim cone."""
    cone = SimplicialCone(TABLE_CONE)
    dc = delta_cone(cone, TABLE_W, 0)
    c = c_min(dc)
    dp = diameter_bound(cone)
    return _kernels.box_filter(
        [-dp] * 4, [dp] * 4,
        ineq=dc.generators,
        strict=[[c.denominator * -x for x in dc.v_i]], strict_rhs=[c.numerator],
        norm2_max=dp * dp, exclude_zero=True, backend=backend,
    )


def parallelepiped(backend):
    return parallelepiped_points(SimplicialCone(WIDE_CONE), backend=backend)[1]


def dominance(backend):
    _, scaled = _candidates(SimplicialCone(WIDE_CONE))
    return _kernels.dominated(scaled, backend=backend)


WORKLOADS = {"crit_sweep": crit_sweep, "parallelepiped": parallelepiped, "dominance": dominance}


def timed(fn, backend, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(backend)
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba unavailable (or CRITARROW_NO_NUMBA set); nothing to compare")
    print(f"{'workload':<16}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fn in WORKLOADS.items():
        fn("numba")  # compile outside the timed region
        a, t_nb = timed(fn, "numba", args.repeat)
        b, t_np = timed(fn, "numpy", args.repeat)
        if not np.array_equal(a, b):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<16}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
