#!/usr/bin/env python3
"""Benchmark the hot kernels: numba-jitted scalar loops vs pure numpy.

Both flavors are imported directly, so the QSTIRLING_BACKEND flag does not
matter here. The Boltzmann-sum benchmark mimics a sweep workload (many
alpha-beta values per run); the erfc benchmark evaluates a dense grid.

    python benchmarks/benchmark_kernels.py
"""
import time

import numpy as np

from qstirling import kernels
from qstirling._backend import HAVE_NUMBA

REPEATS = 5


def best_of(fn, *args):
    times = []
    for _ in range(REPEATS):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def bench_boltzmann():
    ts = np.geomspace(1e-4, 50.0, 4000)

    def run_numpy():
        for t in ts:
            kernels.boltzmann_sums_numpy(float(t))

    print("boltzmann_sums over 4000 alpha-beta values")
    t_np = best_of(run_numpy)
    print(f"  numpy : {t_np * 1e3:8.2f} ms")
    if HAVE_NUMBA:
        jit = kernels.boltzmann_sums_numba
        jit(0.5, kernels.SERIES_REL_TOL, kernels.SERIES_N_MAX)  # compile once

        def run_numba():
            for t in ts:
                jit(float(t), kernels.SERIES_REL_TOL, kernels.SERIES_N_MAX)

        t_nb = best_of(run_numba)
        print(f"  numba : {t_nb * 1e3:8.2f} ms   ({t_np / t_nb:.1f}x)")
    else:
        print("  numba : not installed")


def bench_erfc():
    xs = np.linspace(0.0, 10.0, 200_000)

    print("erfc over 200k points")
    t_np = best_of(kernels.erfc_numpy, xs)
    print(f"  numpy : {t_np * 1e3:8.2f} ms")
    if HAVE_NUMBA:
        jit = kernels.erfc_numba
        jit(1.0)

        def run_numba():
            for x in xs:
                jit(float(x))

        t_nb = best_of(run_numba)
        print(f"  numba : {t_nb * 1e3:8.2f} ms   ({t_np / t_nb:.1f}x, scalar loop)")
    else:
        print("  numba : not installed")


def main():
    print(f"numba available: {HAVE_NUMBA}")
    bench_boltzmann()
    bench_erfc()


if __name__ == "__main__":
    main()
