"""Lower and upper bounds on the variance sum dA^2 + dB^2.

The lower bound sums squared moduli of centered matrix elements against an
orthonormal set orthogonal to the state:

    dA^2 + dB^2 >= (1/2) sum_k ( |<k|A - <A>|psi>| + |<k|B - <B>|psi>| )^2.

It holds for every orthonormal completion of |psi>; the value depends on
which completion is used. Here the completion is modified Gram-Schmidt
seeded with the truncated energy basis, which is deterministic and reduces
to "all other basis vectors" when |psi> is itself a basis vector.

The upper bound comes from squaring the Dunkl-Williams inequality:

    dA^2 + dB^2 <= 2 d(A-B)^2 / (1 - Cov(A,B)/(dA dB)) - 2 dA dB,

with Cov(A,B) = <{A,B}>/2 - <A><B>. It requires dA, dB > 0 and a
nonvanishing denominator.

Both bounds are theorems for the truncated operators they receive, so the
sandwich lower <= dA^2 + dB^2 <= upper is exact up to rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError, TruncationError
from .thermal import (
    ThermalEnvironment,
    _effective_t,
    thermal_variance_p,
    thermal_variance_x,
)
from .well import WellGeometry, eigenstate_moments, position_operator, momentum_operator

__all__ = [
    "TruncatedOperator",
    "StateVector",
    "BoundsReport",
    "basis_state",
    "mp_lower_bound",
    "dw_upper_bound",
    "variance",
    "covariance",
    "eigenstate_sum_variance_bounds",
    "thermal_sum_variance_bounds",
]

_HERMITICITY_TOL = 1e-10
_NORM_TOL = 1e-12


@dataclass(frozen=True)
class TruncatedOperator:
    """A Hermitian operator restricted to a finite basis."""

    elements: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.asarray(self.elements, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        if m.shape[0] < 2:
            raise ValueError("operator dimension must be >= 2")
        scale = max(1.0, float(np.max(np.abs(m))))
        if float(np.max(np.abs(m - m.conj().T))) > _HERMITICITY_TOL * scale:
            raise ValueError(f"operator {self.label!r} is not Hermitian")
        object.__setattr__(self, "elements", m)

    @property
    def dimension(self) -> int:
        return self.elements.shape[0]


@dataclass(frozen=True)
class StateVector:
    """A unit-norm state in the truncated basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).ravel()
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm must be 1 within {_NORM_TOL}, got {norm}")
        object.__setattr__(self, "amplitudes", v)

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]


def basis_state(dim: int, n: int) -> StateVector:
    """The n-th energy basis vector (1-indexed) in a dim-level truncation."""
    if not 1 <= n <= dim:
        raise ValueError(f"need 1 <= n <= dim, got n={n}, dim={dim}")
    v = np.zeros(dim, dtype=complex)
    v[n - 1] = 1.0
    return StateVector(v)


def _check_compatible(state: StateVector, *ops: TruncatedOperator):
    for op in ops:
        if op.dimension != state.dimension:
            raise ValueError(
                f"dimension mismatch: state {state.dimension}, "
                f"operator {op.label!r} {op.dimension}"
            )


def _expect(op: np.ndarray, psi: np.ndarray) -> float:
    return float(np.real(np.vdot(psi, op @ psi)))


def variance(op: TruncatedOperator, state: StateVector) -> float:
    """<A^2> - <A>^2 on the given state."""
    _check_compatible(state, op)
    psi = state.amplitudes
    a_psi = op.elements @ psi
    mean = float(np.real(np.vdot(psi, a_psi)))
    second = float(np.real(np.vdot(a_psi, a_psi)))
    return max(second - mean * mean, 0.0)


def covariance(opA: TruncatedOperator, opB: TruncatedOperator, state: StateVector) -> float:
    """Symmetrized covariance <{A,B}>/2 - <A><B>."""
    _check_compatible(state, opA, opB)
    psi = state.amplitudes
    a_psi = opA.elements @ psi
    b_psi = opB.elements @ psi
    anti = float(np.real(np.vdot(a_psi, b_psi)))
    return anti - _expect(opA.elements, psi) * _expect(opB.elements, psi)


def _orthonormal_complement(psi: np.ndarray) -> np.ndarray:
    """Complete psi to an orthonormal basis by modified Gram-Schmidt seeded
    with the energy basis; returns the dim-1 complement vectors as columns."""
    dim = psi.shape[0]
    vecs = [psi]
    for j in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[j] = 1.0
        for u in vecs:
            v = v - np.vdot(u, v) * u
        norm = np.linalg.norm(v)
        if norm > 1e-10:
            vecs.append(v / norm)
        if len(vecs) == dim:
            break
    return np.column_stack(vecs[1:])


def mp_lower_bound(
    state: StateVector, opA: TruncatedOperator, opB: TruncatedOperator
) -> float:
    """Sum-of-variances lower bound from centered matrix elements.

    Invariant under shifting either operator by a multiple of the identity.
    Always <= variance(A) + variance(B) on the same state.
    """
    _check_compatible(state, opA, opB)
    psi = state.amplitudes
    mean_a = _expect(opA.elements, psi)
    mean_b = _expect(opB.elements, psi)
    a_psi = opA.elements @ psi - mean_a * psi
    b_psi = opB.elements @ psi - mean_b * psi
    comp = _orthonormal_complement(psi)
    a_proj = np.abs(comp.conj().T @ a_psi)
    b_proj = np.abs(comp.conj().T @ b_psi)
    return 0.5 * float(np.sum((a_proj + b_proj) ** 2))


def dw_upper_bound(
    state: StateVector, opA: TruncatedOperator, opB: TruncatedOperator
) -> float:
    """Reverse (upper) bound on the variance sum.

    Raises DegenerateStateError when either variance vanishes or the
    correlation denominator 1 - Cov/(dA dB) is not positive, including the
    A = B case where it is identically zero.
    """
    _check_compatible(state, opA, opB)
    var_a = variance(opA, state)
    var_b = variance(opB, state)
    if var_a <= 0.0 or var_b <= 0.0:
        raise DegenerateStateError(
            "reverse bound undefined: a variance vanishes "
            f"(dA^2={var_a:.3g}, dB^2={var_b:.3g})"
        )
    da = math.sqrt(var_a)
    db = math.sqrt(var_b)
    cov = covariance(opA, opB, state)
    denom = 1.0 - cov / (da * db)
    if denom <= 1e-12:
        raise DegenerateStateError(
            f"reverse bound undefined: correlation denominator {denom:.3g} <= 0"
        )
    diff = TruncatedOperator(opA.elements - opB.elements, label="A-B")
    var_diff = variance(diff, state)
    return 2.0 * var_diff / denom - 2.0 * da * db


@dataclass(frozen=True)
class BoundsReport:
    """Lower bound, central value and upper bound for dX^2 + dP^2."""

    lower: float
    central: float | None
    upper: float
    mode: str

    def __post_init__(self):
        scale = max(abs(self.lower), abs(self.upper), 1e-300)
        if self.lower > self.upper + 1e-9 * scale:
            raise ValueError(f"bounds out of order: {self.lower} > {self.upper}")
        if self.central is not None:
            if self.lower > self.central + 1e-9 * scale or self.central > self.upper + 1e-9 * scale:
                raise ValueError(
                    f"central {self.central} outside [{self.lower}, {self.upper}]"
                )


def eigenstate_sum_variance_bounds(
    geom: WellGeometry, n: int, dim: int, nondimensional: bool = False
) -> BoundsReport:
    """Bounds sandwich for eigenstate n with operators truncated at dim.

    central is the analytic variance sum

        L^2/3 - 2 L^2/(n pi)^2 + n^2 pi^2 hbar^2 / (4 L^2),

    which also equals the printed standard-form upper bound for this state.
    lower and upper come from the truncated-matrix bounds; truncation can
    only lower them, so the sandwich still holds.
    """
    if dim <= 2 * n:
        raise TruncationError(f"need dim > 2n for eigenstate n={n}, got dim={dim}")
    X = TruncatedOperator(position_operator(geom, dim, nondimensional), label="X")
    P = TruncatedOperator(momentum_operator(geom, dim, nondimensional), label="P")
    psi = basis_state(dim, n)
    mom = eigenstate_moments(geom, n)
    central = mom.var_x + mom.var_p
    if nondimensional:
        central = mom.var_x / geom.half_width_L**2 + mom.var_p * (
            geom.half_width_L / geom.hbar
        ) ** 2
    return BoundsReport(
        lower=mp_lower_bound(psi, X, P),
        central=central,
        upper=dw_upper_bound(psi, X, P),
        mode="eigenstate",
    )


def _weights(t: float, dim: int) -> np.ndarray:
    n = np.arange(1, dim + 1, dtype=float)
    w = np.exp(-t * n * n)
    return w / np.sum(w)


def thermal_sum_variance_bounds(
    geom: WellGeometry,
    env: ThermalEnvironment,
    dim: int,
    pinned_n: float | None = None,
    x_mode: str = "simplified",
    nondimensional: bool = False,
) -> BoundsReport:
    """Thermal bounds sandwich at temperature T (or at pinned nbar).

    lower   Boltzmann-weighted average of the per-eigenstate lower bounds,
            which is linear in the ensemble and reduces to the eigenstate
            bound as T -> 0.
    central closed-form dX_T^2 + dP_T^2.
    upper   the thermal reverse-bound expression

        4L^2/3 - (8 L^2 sqrt(t)/pi^(5/2)) (e^-t - sqrt(pi t))
              + hbar^2 nbar^2 pi^3 / (4 L^2).

    dim must be large enough that exp(-t dim^2) < 1e-15 so the Boltzmann
    average is fully resolved by the truncation.
    """
    t = _effective_t(geom, env, pinned_n)
    if math.exp(-t * dim * dim) >= 1e-15:
        raise TruncationError(
            f"dim={dim} too small at alpha*beta={t:.3g}; "
            "need exp(-t dim^2) < 1e-15"
        )
    X = TruncatedOperator(position_operator(geom, dim, nondimensional), label="X")
    P = TruncatedOperator(momentum_operator(geom, dim, nondimensional), label="P")
    w = _weights(t, dim)
    lower = 0.0
    for k, wk in enumerate(w, start=1):
        if wk < 1e-16:
            break
        lower += wk * mp_lower_bound(basis_state(dim, k), X, P)

    vx = thermal_variance_x(geom, env, mode=x_mode, pinned_n=pinned_n)
    vp = thermal_variance_p(geom, env, pinned_n=pinned_n)
    nbar = float(pinned_n) if pinned_n is not None else 1.0 / math.sqrt(math.pi * t)
    L = geom.half_width_L
    upper = (
        4.0 * L * L / 3.0
        - (8.0 * L * L * math.sqrt(t) / math.pi**2.5)
        * (math.exp(-t) - math.sqrt(math.pi * t))
        + (geom.hbar * nbar) ** 2 * math.pi**3 / (4.0 * L * L)
    )
    if nondimensional:
        sx = 1.0 / L**2
        sp = (L / geom.hbar) ** 2
        vx, vp = vx * sx, vp * sp
        upper = (
            4.0 / 3.0
            - (8.0 * math.sqrt(t) / math.pi**2.5)
            * (math.exp(-t) - math.sqrt(math.pi * t))
            + nbar**2 * math.pi**3 / 4.0
        )
    return BoundsReport(lower=lower, central=vx + vp, upper=upper, mode="thermal")
