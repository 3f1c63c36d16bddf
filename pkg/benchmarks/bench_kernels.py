"""Time the numba kernels against the pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--sizes 256 1024 4096] [--repeat 3]

Each kernel is run once before timing so numba compilation is excluded.
The last column checks that both backends return the same numbers.
"""
import argparse
import time

import numpy as np

from orliczmorrey import _kernels_numpy as np_k
from orliczmorrey._accel import HAVE_NUMBA
from orliczmorrey.sampled import GridFunction, geometric_radii


def _cases(n_cells, rng):
    g = GridFunction.zeros([-4.0], [4.0], [n_cells])
    pts = g.points
    f = rng.standard_normal(n_cells)
    b = np.cumsum(rng.standard_normal(n_cells)) / 8
    radii = geometric_radii(g.h[0], g.diameter)
    scale = (2 * radii) ** -0.75 * g.cell_volume
    centers = pts[:: max(1, n_cells // 64)]
    ball_r = np.full(centers.shape[0], 0.5)
    return {
        "maximal_brute": lambda k: k.maximal_brute(pts, np.abs(f), radii, scale),
        "comm_maximal_brute": lambda k: k.comm_maximal_brute(pts, np.abs(f), b, radii, scale),
        "riesz_sum": lambda k: k.riesz_sum(pts, f, b, 2, -0.5, 0.0, g.cell_volume),
        "ball_oscillation": lambda k: k.ball_oscillation(pts, b, centers, ball_r, 1.0),
    }


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not importable; only the numpy path can run")
        return
    from orliczmorrey import _kernels_numba as nb_k
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20} {'cells':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}  agree")
    for n_cells in args.sizes:
        for name, run in _cases(n_cells, rng).items():
            ref, got = run(np_k), run(nb_k)  # warm-up and agreement check
            ref, got = (ref,) if not isinstance(ref, tuple) else ref, (got,) if not isinstance(got, tuple) else got
            agree = all(np.allclose(a, c, rtol=1e-10, atol=1e-12) for a, c in zip(ref, got))
            t_np = _best(lambda: run(np_k), args.repeat)
            t_nb = _best(lambda: run(nb_k), args.repeat)
            print(f"{name:<20} {n_cells:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}  {agree}")


if __name__ == "__main__":
    main()
