"""Canonical-ensemble quantities for the well at temperature T.

Everything is controlled by the dimensionless product t = alpha * beta.
The closed forms assume t small (high temperature or wide well); their
exact-series counterparts are valid for any t and are used wherever the
sweep leaves the expansion regime. A RegimeWarning is emitted when a
closed form is evaluated at t > 0.5.

Closed forms, with nbar = 1 / sqrt(pi t):

    Z        = (1/2) sqrt(pi / t)
    <E>      = 1 / (2 beta)
    dX^2     = L^2 [ 1/3 - (4 sqrt(t)/pi^(5/2)) (e^-t - sqrt(pi t)) ]     (simplified)
             = L^2 [ 1/3 - (2/pi^2) (e^-t - sqrt(pi t) erfc(sqrt t)) / Z ] (erfc form)
    dP^2     = pi^3 hbar^2 nbar^2 / (8 L^2)

Pinning nbar to an integer fixes the effective t through t = 1/(pi nbar^2),
which is how constant-level curves are produced.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import kernels
from .constants import K_B
from .errors import ConvergenceError, RegimeError
from .numerics import erfc
from .well import WellGeometry, eigenstate_moments, eigenstate_product_uncertainty

__all__ = [
    "ThermalEnvironment",
    "UncertaintyPair",
    "RegimeWarning",
    "reduced_environment",
    "alpha_beta",
    "partition_function",
    "mean_energy",
    "mean_quantum_number",
    "mean_square_quantum_number",
    "thermal_variance_x",
    "thermal_variance_p",
    "thermal_uncertainty",
    "thermal_uncertainty_series",
    "eigenstate_uncertainty",
]

REGIME_ALPHA_BETA_MAX = 0.5

_PI = math.pi
_C4 = 4.0 / _PI**2.5  # coefficient of the simplified dX^2 correction


class RegimeWarning(UserWarning):
    """A small-alpha-beta closed form was evaluated outside its comfort zone."""


@dataclass(frozen=True)
class ThermalEnvironment:
    """Heat bath at temperature_T; k_B overridable for reduced units."""

    temperature_T: float
    k_B: float = K_B

    def __post_init__(self):
        if self.temperature_T <= 0.0:
            raise ValueError(f"temperature_T must be > 0, got {self.temperature_T}")
        if self.k_B <= 0.0:
            raise ValueError(f"k_B must be > 0, got {self.k_B}")

    @property
    def beta(self) -> float:
        return 1.0 / (self.k_B * self.temperature_T)


def reduced_environment(temperature_T: float) -> ThermalEnvironment:
    """Environment in reduced units k_B = 1."""
    return ThermalEnvironment(temperature_T=temperature_T, k_B=1.0)


def alpha_beta(geom: WellGeometry, env: ThermalEnvironment) -> float:
    """The dimensionless expansion parameter t = alpha * beta."""
    return geom.alpha * env.beta


@dataclass(frozen=True)
class UncertaintyPair:
    """Position and momentum spreads with their product and raw sum.

    The sum adds a length to a momentum; that mixing is deliberate and
    follows the quantities as defined. mode records how the pair was
    evaluated: eigenstate, thermal_exact (erfc form), thermal_simplified,
    or thermal_series.
    """

    delta_x: float
    delta_p: float
    mode: str

    def __post_init__(self):
        if self.delta_x < 0.0 or self.delta_p < 0.0:
            raise ValueError("uncertainties must be nonnegative")

    @property
    def product(self) -> float:
        return self.delta_x * self.delta_p

    @property
    def sum_value(self) -> float:
        return self.delta_x + self.delta_p


def _warn_regime(t: float, where: str):
    if t > REGIME_ALPHA_BETA_MAX:
        warnings.warn(
            f"{where}: alpha*beta = {t:.3g} exceeds {REGIME_ALPHA_BETA_MAX}; "
            "closed forms assume a small product",
            RegimeWarning,
            stacklevel=3,
        )


def _sums(t: float):
    """Ground-scaled thermal sums: n^p weights relative to the n = 1 term.

    Ratios of these are the physical averages; multiply by exp(-t) for the
    raw sums.
    """
    s0, s1, s2, sm2, n_used, converged = kernels.boltzmann_sums(
        t, kernels.SERIES_REL_TOL, kernels.SERIES_N_MAX
    )
    if not converged:
        raise ConvergenceError(
            f"Boltzmann series at alpha*beta={t:.3g} did not converge "
            f"within {kernels.SERIES_N_MAX} terms"
        )
    return s0, s1, s2, sm2


def _effective_t(geom, env, pinned_n):
    if pinned_n is None:
        return alpha_beta(geom, env)
    if pinned_n <= 0:
        raise ValueError(f"pinned_n must be positive, got {pinned_n}")
    return 1.0 / (_PI * pinned_n**2)


def partition_function(
    geom: WellGeometry, env: ThermalEnvironment, mode: str = "exact_series"
) -> float:
    """Single-particle partition function.

    exact_series sums e^(-t n^2) term by term; gaussian returns the
    integral approximation (1/2) sqrt(pi/t), which always overestimates
    the sum (by about 1/2 for small t).
    """
    t = alpha_beta(geom, env)
    if mode == "gaussian":
        return 0.5 * math.sqrt(_PI / t)
    if mode == "exact_series":
        s0, _, _, _ = _sums(t)
        return math.exp(-t) * s0
    raise ValueError(f"unknown partition function mode {mode!r}")


def mean_energy(
    geom: WellGeometry, env: ThermalEnvironment, mode: str = "exact_series"
) -> float:
    """Mean energy <E>. Gaussian mode gives the equipartition value 1/(2 beta)."""
    if mode == "gaussian":
        return 0.5 / env.beta
    if mode == "exact_series":
        t = alpha_beta(geom, env)
        s0, _, s2, _ = _sums(t)
        return geom.alpha * s2 / s0
    raise ValueError(f"unknown mean energy mode {mode!r}")


def mean_quantum_number(
    geom: WellGeometry, env: ThermalEnvironment, mode: str = "closed"
) -> float:
    """Boltzmann-averaged level index nbar.

    closed: 1 / sqrt(pi alpha beta). exact_series: the ratio of sums that
    defines nbar, valid at any temperature.
    """
    t = alpha_beta(geom, env)
    if mode == "closed":
        return 1.0 / math.sqrt(_PI * t)
    if mode == "exact_series":
        s0, s1, _, _ = _sums(t)
        return s1 / s0
    raise ValueError(f"unknown mean quantum number mode {mode!r}")


def mean_square_quantum_number(geom: WellGeometry, env: ThermalEnvironment) -> float:
    """Exact-series <n^2>, for comparing nbar^2 against the true average."""
    t = alpha_beta(geom, env)
    s0, _, s2, _ = _sums(t)
    return s2 / s0


def _var_x_simplified(t: float, L: float) -> float:
    return L * L * (1.0 / 3.0 - _C4 * math.sqrt(t) * (math.exp(-t) - math.sqrt(_PI * t)))


def _var_x_erfc(t: float, L: float) -> float:
    z_gauss = 0.5 * math.sqrt(_PI / t)
    tail = math.exp(-t) - math.sqrt(_PI * t) * erfc(math.sqrt(t))
    return L * L * (1.0 / 3.0 - (2.0 / _PI**2) * tail / z_gauss)


def thermal_variance_x(
    geom: WellGeometry,
    env: ThermalEnvironment,
    mode: str = "erfc_exact",
    pinned_n: float | None = None,
) -> float:
    """Thermal position variance dX_T^2.

    erfc_exact keeps the complementary-error-function tail; simplified
    replaces erfc by 1, which is the printed small-t form. Both reduce to
    L^2/3 as t -> 0.

    Raises RegimeError if the result is not positive (the approximation
    has broken down entirely).
    """
    t = _effective_t(geom, env, pinned_n)
    _warn_regime(t, "thermal_variance_x")
    if mode == "erfc_exact":
        v = _var_x_erfc(t, geom.half_width_L)
    elif mode == "simplified":
        v = _var_x_simplified(t, geom.half_width_L)
    else:
        raise ValueError(f"unknown variance mode {mode!r}")
    if v <= 0.0:
        raise RegimeError(
            f"thermal_variance_x({mode}) is non-positive at alpha*beta={t:.3g}"
        )
    return v


def thermal_variance_p(
    geom: WellGeometry,
    env: ThermalEnvironment,
    pinned_n: float | None = None,
) -> float:
    """Thermal momentum variance dP_T^2 = pi^3 hbar^2 nbar^2 / (8 L^2).

    nbar is the closed form unless pinned_n fixes it. The nbar^2 here
    stands in for <n^2>; mean_square_quantum_number exposes the exact
    average for comparison.
    """
    if pinned_n is None:
        t = alpha_beta(geom, env)
        _warn_regime(t, "thermal_variance_p")
        nbar = 1.0 / math.sqrt(_PI * t)
    else:
        nbar = float(pinned_n)
    return _PI**3 * (geom.hbar * nbar) ** 2 / (8.0 * geom.half_width_L**2)


def thermal_uncertainty(
    geom: WellGeometry,
    env: ThermalEnvironment,
    x_mode: str = "simplified",
    pinned_n: float | None = None,
) -> UncertaintyPair:
    """Thermal uncertainty pair from the closed forms.

    The product reproduces

        dX dP = (hbar nbar pi^(3/2) / (2 sqrt 2))
                * sqrt(1/3 - (4/(nbar pi^3)) (e^(-1/(pi nbar^2)) - 1/nbar))

    exactly when x_mode='simplified' (the two expressions are the same
    algebra in different variables) and stays >= hbar/2 in every mode.
    """
    t = _effective_t(geom, env, pinned_n)
    _warn_regime(t, "thermal_uncertainty")
    if x_mode == "simplified":
        vx = _var_x_simplified(t, geom.half_width_L)
        mode = "thermal_simplified"
    elif x_mode == "erfc_exact":
        vx = _var_x_erfc(t, geom.half_width_L)
        mode = "thermal_exact"
    else:
        raise ValueError(f"unknown x_mode {x_mode!r}")
    if vx <= 0.0:
        raise RegimeError(f"thermal variance collapsed at alpha*beta={t:.3g}")
    nbar = float(pinned_n) if pinned_n is not None else 1.0 / math.sqrt(_PI * t)
    dp = _PI**1.5 * geom.hbar * nbar / (2.0 * math.sqrt(2.0) * geom.half_width_L)
    return UncertaintyPair(delta_x=math.sqrt(vx), delta_p=dp, mode=mode)


def thermal_uncertainty_series(
    geom: WellGeometry, env: ThermalEnvironment
) -> UncertaintyPair:
    """Thermal uncertainty pair from the exact Boltzmann series.

    Valid at any alpha*beta, including the deep quantum regime where the
    closed forms are meaningless. dX^2 averages the eigenstate <x^2>;
    dP^2 averages <p^2> (so it uses the true <n^2>).
    """
    t = alpha_beta(geom, env)
    s0, _, s2, sm2 = _sums(t)
    L = geom.half_width_L
    var_x = L * L * (1.0 / 3.0 - (2.0 / _PI**2) * (sm2 / s0))
    var_p = (_PI * geom.hbar) ** 2 / (4.0 * L * L) * (s2 / s0)
    return UncertaintyPair(
        delta_x=math.sqrt(var_x), delta_p=math.sqrt(var_p), mode="thermal_series"
    )


def eigenstate_uncertainty(geom: WellGeometry, n: int) -> UncertaintyPair:
    """Uncertainty pair for a single eigenstate (zero temperature limit)."""
    mom = eigenstate_moments(geom, n)
    pair = UncertaintyPair(
        delta_x=math.sqrt(mom.var_x), delta_p=math.sqrt(mom.var_p), mode="eigenstate"
    )
    # Guard against drift from the closed-form product identity.
    closed = eigenstate_product_uncertainty(geom, n)
    if abs(pair.product - closed) > 1e-12 * closed:
        raise AssertionError("eigenstate moments disagree with the closed product")
    return pair
