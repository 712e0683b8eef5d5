"""Shared numerical kernel: series summation, adaptive quadrature, erfc,
finite differences.

These routines are the independent oracles the physics modules are tested
against, and the series engine behind the canonical-ensemble sums. They are
pure and deterministic: the same inputs give bit-identical results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesResult",
    "sum_series",
    "integrate",
    "erfc",
    "erf",
    "central_difference",
]


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a truncated series evaluation.

    value is the partial sum, terms_used the index of the last term added,
    converged whether the stopping rule fired before n_max.
    """

    value: float
    terms_used: int
    converged: bool

    def __post_init__(self):
        if self.terms_used < 1:
            raise ValueError(f"terms_used must be >= 1, got {self.terms_used}")


def sum_series(
    term: Callable[[int], float],
    rel_tol: float = 1e-15,
    n_max: int = 1_000_000,
) -> SeriesResult:
    """Sum term(n) for n = 1, 2, ... until |term(n)| <= rel_tol * |partial|.

    Meant for series whose terms eventually decrease monotonically in
    magnitude (Gaussian tails, geometric remainders). Divergent input is
    caught by the n_max cap and reported as converged=False.

    Raises
    ------
    ConvergenceError
        If a term evaluates to a non-finite value.
    """
    if rel_tol <= 0.0:
        raise ValueError(f"rel_tol must be > 0, got {rel_tol}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")

    partial = 0.0
    n = 0
    for n in range(1, n_max + 1):
        t = term(n)
        if not math.isfinite(t):
            raise ConvergenceError(f"series term({n}) is not finite: {t!r}")
        partial += t
        if abs(t) <= rel_tol * abs(partial):
            return SeriesResult(value=partial, terms_used=n, converged=True)
    return SeriesResult(value=partial, terms_used=n, converged=False)


# Adaptive Gauss-Legendre quadrature. Each panel is estimated with a 10-point
# and a 20-point rule; the difference drives bisection. Nodes come from
# numpy's Legendre machinery, so no tabulated constants are needed.
_GL_LO = np.polynomial.legendre.leggauss(10)
_GL_HI = np.polynomial.legendre.leggauss(20)
_MAX_PANELS = 16384


def _panel_pair(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xl, wl = _GL_LO
    xh, wh = _GL_HI
    lo = half * float(np.sum(wl * np.asarray(f(mid + half * xl), dtype=float)))
    hi = half * float(np.sum(wh * np.asarray(f(mid + half * xh), dtype=float)))
    return hi, abs(hi - lo)


def integrate(f: Callable, a: float, b: float, abs_tol: float = 1e-11) -> float:
    """Adaptive quadrature of f over [a, b] with estimated error <= abs_tol.

    f must accept an ndarray of evaluation points. The integrand is assumed
    finite on [a, b].

    Raises
    ------
    DomainError
        If a >= b.
    ConvergenceError
        If the tolerance is not met within the subdivision budget.
    """
    if not (a < b):
        raise DomainError(f"integration bounds must satisfy a < b, got a={a}, b={b}")
    if abs_tol <= 0.0:
        raise ValueError(f"abs_tol must be > 0, got {abs_tol}")

    width = b - a
    # Eight seed panels resolve mild oscillation before adaptivity kicks in.
    edges = np.linspace(a, b, 9)
    stack = [(edges[i], edges[i + 1]) for i in range(8)]
    total = 0.0
    evaluations = 0
    while stack:
        lo, hi = stack.pop()
        if evaluations > _MAX_PANELS:
            raise ConvergenceError(
                f"quadrature did not reach abs_tol={abs_tol} within "
                f"{_MAX_PANELS} panel evaluations"
            )
        value, err = _panel_pair(f, lo, hi)
        evaluations += 1
        if err <= abs_tol * (hi - lo) / width or (hi - lo) < 1e-15 * width:
            total += value
        else:
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid))
            stack.append((mid, hi))
    return total


def erfc(x: float) -> float:
    """Complementary error function, accurate to ~1e-13 relative on [0, 10].

    Power series below |x| = 2, Gauss continued fraction above, and the
    reflection erfc(-x) = 2 - erfc(x) for negative arguments.
    """
    if not math.isfinite(x):
        raise DomainError(f"erfc argument must be finite, got {x!r}")
    return kernels.erfc_scalar(float(x))


def erf(x: float) -> float:
    """Error function via the identity erf(x) = 1 - erfc(x)."""
    return 1.0 - erfc(x)


def central_difference(f: Callable[[float], float], x: float, h: float) -> float:
    """Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).

    Exact for quadratics; O(h^2) error otherwise.
    """
    if h <= 0.0:
        raise ValueError(f"step h must be > 0, got {h}")
    return (f(x + h) - f(x - h)) / (2.0 * h)
