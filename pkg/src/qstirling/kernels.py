"""Hot numeric kernels, in two flavors.

Every kernel has a scalar-loop implementation (``*_scalar``, compiled with
numba when the numba backend is active) and a vectorized pure-numpy twin
(``*_numpy``). The public names (``boltzmann_sums``, ``erfc_scalar``, ...)
are aliases bound once at import time according to QSTIRLING_BACKEND; both
flavors stay importable so tests and benchmarks can compare them.
"""
from __future__ import annotations

import math

import numpy as np

from ._backend import USE_NUMBA, njit

SERIES_REL_TOL = 1e-15
SERIES_N_MAX = 1_000_000

_SQRT_PI = math.sqrt(math.pi)


# -- Boltzmann series sums ---------------------------------------------------
#
# For t > 0 returns (S0, S1, S2, Sm2, n_used, converged) with
#   Sp = sum_{n>=1} n^p exp(-t (n^2 - 1))   for p in (0, 1, 2, -2),
# i.e. the thermal sums scaled by the ground-state weight exp(+t). The
# scaling keeps ratios like S1/S0 exact at any t (raw sums underflow for
# t beyond ~700); multiply by exp(-t) to recover the raw sum. Terms decay
# like exp(-t n^2); the loop stops once a weight falls below rel_tol * S0.

def _boltzmann_sums_scalar(t, rel_tol, n_max):
    s0 = 0.0
    s1 = 0.0
    s2 = 0.0
    sm2 = 0.0
    n = 1
    converged = False
    while n <= n_max:
        w = math.exp(-t * (n * n - 1.0))
        s0 += w
        s1 += n * w
        s2 += n * n * w
        sm2 += w / (n * n)
        if w <= rel_tol * s0:
            converged = True
            break
        n += 1
    return s0, s1, s2, sm2, n, converged


boltzmann_sums_python = _boltzmann_sums_scalar
boltzmann_sums_numba = njit(cache=True)(_boltzmann_sums_scalar) if USE_NUMBA else None


def boltzmann_sums_numpy(t, rel_tol=SERIES_REL_TOL, n_max=SERIES_N_MAX):
    """Vectorized fallback: evaluates weights in growing blocks."""
    block = 64
    start = 1
    s0 = s1 = s2 = sm2 = 0.0
    converged = False
    n_used = 0
    while start <= n_max:
        stop = min(start + block - 1, n_max)
        n = np.arange(start, stop + 1, dtype=np.float64)
        w = np.exp(-t * (n * n - 1.0))
        c0 = np.cumsum(w)
        tail = np.nonzero(w <= rel_tol * (s0 + c0))[0]
        if tail.size:
            k = tail[0]
            s0 += float(c0[k])
            s1 += float(np.sum((n * w)[: k + 1]))
            s2 += float(np.sum((n * n * w)[: k + 1]))
            sm2 += float(np.sum((w / (n * n))[: k + 1]))
            n_used = int(n[k])
            converged = True
            break
        s0 += float(c0[-1])
        s1 += float(np.sum(n * w))
        s2 += float(np.sum(n * n * w))
        sm2 += float(np.sum(w / (n * n)))
        n_used = int(n[-1])
        start = stop + 1
        block = min(block * 2, 65536)
    return s0, s1, s2, sm2, n_used, converged


# -- Complementary error function --------------------------------------------
#
# Maclaurin series for |x| <= 2, Gauss continued fraction beyond, with the
# reflection erfc(-x) = 2 - erfc(x). Accurate to ~1e-14 relative on [0, 10].

def _erfc_scalar(x):
    ax = abs(x)
    if ax <= 2.0:
        # erf(ax) = 2/sqrt(pi) * sum_k (-1)^k ax^(2k+1) / (k! (2k+1))
        total = ax
        term = ax
        k = 1
        while k < 200:
            term *= -ax * ax / k
            contrib = term / (2 * k + 1)
            total += contrib
            if abs(contrib) <= 1e-18 * abs(total):
                break
            k += 1
        c = 1.0 - 1.1283791670955126 * total  # 2/sqrt(pi)
    else:
        # erfc(ax) = exp(-ax^2)/sqrt(pi) / (ax + (1/2)/(ax + 1/(ax + (3/2)/(ax + ...))))
        depth = 12 + int(220.0 / (ax * ax))
        d = ax
        for k in range(depth, 0, -1):
            d = ax + (0.5 * k) / d
        c = math.exp(-ax * ax) / (1.7724538509055159 * d)
    if x < 0.0:
        return 2.0 - c
    return c


erfc_python = _erfc_scalar
erfc_numba = njit(cache=True)(_erfc_scalar) if USE_NUMBA else None


def erfc_numpy(x):
    """Vectorized fallback over an ndarray (or scalar)."""
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    ax = np.abs(x)
    out = np.empty_like(ax)

    small = ax <= 2.0
    if np.any(small):
        a = ax[small]
        total = a.copy()
        term = a.copy()
        for k in range(1, 200):
            term = term * (-a * a) / k
            contrib = term / (2 * k + 1)
            total += contrib
            if np.all(np.abs(contrib) <= 1e-18 * np.abs(total) + 1e-300):
                break
        out[small] = 1.0 - 1.1283791670955126 * total

    big = ~small
    if np.any(big):
        a = ax[big]
        depth = 12 + int(220.0 / float(np.min(a)) ** 2)
        d = a.copy()
        for k in range(depth, 0, -1):
            d = a + (0.5 * k) / d
        out[big] = np.exp(-a * a) / (1.7724538509055159 * d)

    out = np.where(x < 0.0, 2.0 - out, out)
    return float(out[0]) if scalar else out


if USE_NUMBA:
    boltzmann_sums = boltzmann_sums_numba
    erfc_scalar = erfc_numba
else:
    def boltzmann_sums(t, rel_tol=SERIES_REL_TOL, n_max=SERIES_N_MAX):
        return boltzmann_sums_numpy(t, rel_tol, n_max)

    erfc_scalar = erfc_python


def warmup():
    """Trigger JIT compilation (no-op on the numpy backend)."""
    boltzmann_sums(1.0, SERIES_REL_TOL, SERIES_N_MAX)
    erfc_scalar(0.5)
    erfc_scalar(3.0)
