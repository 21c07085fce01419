"""Time the compiled state kernel against the pure-Python reference.

    python benchmarks/bench_kernel.py --crossings 8 10 12 14 --repeat 3
"""

import argparse
import random
import statistics
import time

import numpy as np

from twistbracket import kernel
from twistbracket.generate import random_plat


def rows(d):
    order = d.site_vertices + d.crossing_vertices
    out = ([], [])
    for v in order:
        vert = d.vertices[v]
        for bit in (0, 1):
            (p, q), (r, s) = vert.smoothing(bit)
            out[bit].append((vert.ports[p], vert.ports[q], vert.ports[r], vert.ports[s]))
    return out


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--crossings", type=int, nargs="+", default=[8, 10, 12, 14])
    ap.add_argument("--sites", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if kernel.BACKEND != "cython":
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
    rng = random.Random(args.seed)
    print(f"{'crossings':>9} {'sites':>5} {'states':>9} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for c in args.crossings:
        d = random_plat(rng, 3, c + args.sites, args.sites)
        r0, r1 = rows(d)
        py, _, h_py = best_of(lambda: kernel.state_histogram_py(r0, r1, d.edge_count, d.k), args.repeat)
        states = 2 ** (c + d.k)
        if kernel.BACKEND == "cython":
            cy, _, h_cy = best_of(lambda: kernel.state_histogram(r0, r1, d.edge_count, d.k), args.repeat)
            assert np.array_equal(h_py, h_cy)
            print(f"{d.n_crossings:>9} {d.k:>5} {states:>9} {py:>10.4f} {cy:>10.4f} {py / cy:>7.1f}x")
        else:
            print(f"{d.n_crossings:>9} {d.k:>5} {states:>9} {py:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
