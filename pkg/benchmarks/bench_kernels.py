"""Compare the numba and pure-numpy kernels on one O-OLCT axis step.

    python benchmarks/bench_kernels.py [--n 32 48] [--repeat 3]

Both backends live in the same module; the benchmark flips
``kernels.USE_NUMBA`` between runs instead of re-importing.
"""
import argparse
import time

import numpy as np

from octolct import algebra, kernels, transform as tr
from octolct.grid import Grid
from octolct.signals import random_smooth


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(n, repeat):
    grid = Grid.centered((n, n, n), 8.0)
    f = random_smooth(grid, seed=1)
    P = tr.OLCTParamsTriple.build((1, 1, 1, 2, 0.5, -0.3), (0, 1, -1, 0, 0, 0), (2, 1, 1, 1, 0, 0))
    index, sign = algebra.table()
    a = np.random.default_rng(0).standard_normal((8, n ** 3))
    b = np.random.default_rng(1).standard_normal((8, n ** 3))
    rows = []
    saved = kernels.USE_NUMBA
    try:
        for backend in ("numpy", "numba"):
            if backend == "numba" and kernels.numba is None:
                continue
            kernels.USE_NUMBA = backend == "numba"
            # warm up the JIT outside the timed region
            kernels.mul(a[:, :8], b[:, :8], index, sign)
            tr.oolct3d(random_smooth(Grid.centered((8, 8, 8), 4.0)), P)
            t_mul, _ = _time(lambda: kernels.mul(a, b, index, sign), repeat)
            t_dir, F = _time(lambda: tr.oolct3d(f, P), repeat)
            rows.append((backend, t_mul, t_dir, F))
    finally:
        kernels.USE_NUMBA = saved
    t_fft, F_fft = _time(lambda: tr.oolct3d(f, P, tr.TransformOptions(path="fft")), repeat)
    print(f"n={n}^3")
    for backend, t_mul, t_dir, F in rows:
        diff = np.abs(F.comp - F_fft.comp).max() / np.abs(F_fft.comp).max()
        print(f"  {backend:6s} pointwise mul {t_mul * 1e3:8.2f} ms   direct O-OLCT {t_dir * 1e3:9.1f} ms"
              f"   max rel diff vs fft {diff:.1e}")
    print(f"  fft    path                          {t_fft * 1e3:9.1f} ms")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[32, 48])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    for n in args.n:
        bench(n, args.repeat)


if __name__ == "__main__":
    main()
