"""Benchmark the njit kernels against the pure-numpy fallbacks.

Both variants are always importable from maxeig._kernels, so they can be
timed side by side in one process regardless of the MAXEIG_PURE_NUMPY
setting.  Run with:

    python benchmarks/bench_solvers.py [--sizes 200,500,1000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from maxeig import _kernels
from maxeig.models import SingleBirthSpec, single_birth_q


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_lu(n, repeat):
    m = -single_birth_q(SingleBirthSpec(n=n)) + 0.1 * np.eye(n)
    rhs = np.ones(n) / np.sqrt(n)
    tiny = 1e-13 * np.abs(m).max()
    rows = []
    for label, factor, solve in (
        ("numpy", _kernels.lu_factor_numpy, _kernels.lu_backsolve_numpy),
        ("njit", _kernels.lu_factor_njit, _kernels.lu_backsolve_njit),
    ):
        if factor is None:
            continue
        factor(m[:4, :4].copy(), tiny)  # warm the JIT outside the timer
        t, (lu, piv, fail) = _time(lambda: factor(m, tiny), repeat)
        assert fail < 0
        ts, x = _time(lambda: solve(lu, piv, rhs), repeat)
        res = np.abs(m @ x - rhs).max()
        rows.append((label, t, ts, res))
    return rows

def bench_thomas(n, repeat):
    rng = np.random.default_rng(7)
    sub = -rng.uniform(0.5, 1.5, n - 1)
    sup = -rng.uniform(0.5, 1.5, n - 1)
    diag = np.abs(sub).sum() / n + 3.0 + rng.uniform(0, 1, n)
    rhs = rng.uniform(0.5, 1.5, n)
    rows = []
    for label, fn in (("numpy", _kernels.thomas_numpy), ("njit", _kernels.thomas_njit)):
        if fn is None:
            continue
        fn(sub[:3], diag[:4], sup[:3], rhs[:4], 1e-13)
        t, (x, fail) = _time(lambda: fn(sub, diag, sup, rhs, 1e-13), repeat)
        assert fail < 0
        dense_res = diag * x
        dense_res[1:] += sub * x[:-1]
        dense_res[:-1] += sup * x[1:]
        rows.append((label, t, np.abs(dense_res - rhs).max()))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="200,500,1000")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if not _kernels.NUMBA_AVAILABLE:
        print("numba unavailable: timing the numpy path only")

    print(f"{'LU factor+solve':<22}{'factor[s]':>12}{'solve[s]':>12}{'residual':>12}")
    for n in sizes:
        for label, t, ts, res in bench_lu(n, args.repeat):
            print(f"  n={n:<6} {label:<10}{t:>12.4f}{ts:>12.5f}{res:>12.2e}")

    print(f"\n{'Thomas solve':<22}{'solve[s]':>12}{'residual':>12}")
    for n in (10 * s for s in sizes):
        for label, t, res in bench_thomas(n, args.repeat):
            print(f"  n={n:<6} {label:<10}{t:>12.5f}{res:>12.2e}")


if __name__ == "__main__":
    main()
