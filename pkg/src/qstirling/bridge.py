"""Dictionary between the thermal uncertainty sum and thermodynamics.

The partition function can be rebuilt from the uncertainty sum once a
temperature-dependent offset C_T is added:

    Z = (sqrt2 / sqrt pi) (dX_T/L + dP_T L/hbar + C_T/L) ~ pi nbar / 2.

The combination is evaluated in the scale-free form shown (lengths in
units of L, momenta in units of hbar/L), which is the only reading under
which the three summands are commensurable; the result then depends on
the single parameter t = alpha beta and matches the Gaussian partition
function with an O(sqrt t) relative error.

With the bridge in hand, F = -ln(Z)/beta and S = -dF/dT follow. The
entropy derivative is carried out analytically on the bridge argument;
nu and gamma below are its dimensionless pieces (position part and
momentum-plus-offset part respectively), so that

    S = k_B [ ln Z_bridge + (nu + gamma) / G ],   G = the bridge argument.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, RegimeError
from .thermal import RegimeWarning, ThermalEnvironment, alpha_beta
from .well import WellGeometry

__all__ = [
    "BridgeConstants",
    "c_t_constant",
    "partition_from_uncertainty",
    "helmholtz_free_energy",
    "entropy",
    "entropy_oracle",
    "bridge_constants",
    "bridge_d_coefficient",
]

_PI = math.pi
_SQ2 = math.sqrt(2.0)
_BRIDGE_REGIME = 0.1


@dataclass(frozen=True)
class BridgeConstants:
    """Auxiliary bridge quantities at one temperature.

    c_t carries length units (it scales with L at fixed alpha beta);
    nu and gamma are the dimensionless entropy-derivative contributions.
    """

    c_t: float
    nu: float
    gamma: float
    at_temperature: float


def _f_x(t: float) -> float:
    # dX_T / L, simplified closed form
    return math.sqrt(1.0 / 3.0 - (4.0 / _PI**2.5) * math.sqrt(t) * (math.exp(-t) - math.sqrt(_PI * t)))


def _p_dimless(t: float) -> float:
    # dP_T * L / hbar with the closed-form nbar
    return _PI / (2.0 * _SQ2 * math.sqrt(t))


def _c_dimless(t: float) -> float:
    # C_T / L
    return -1.0 / 3.0 + (2.0 * math.sqrt(t) / _PI**2.5) * (
        t - math.sqrt(_PI) * t**1.5 - 1.0
    )


def _df_x(t: float) -> float:
    # d/dt of _f_x
    g_prime = math.exp(-t) * (0.5 / math.sqrt(t) - math.sqrt(t)) - math.sqrt(_PI)
    return -(4.0 / _PI**2.5) * g_prime / (2.0 * _f_x(t))


def _dp_dimless(t: float) -> float:
    return -_PI / (4.0 * _SQ2 * t**1.5)


def _dc_dimless(t: float) -> float:
    return (2.0 / _PI**2.5) * (1.5 * math.sqrt(t) - 2.0 * math.sqrt(_PI) * t - 0.5 / math.sqrt(t))


def _check_regime(t: float, where: str):
    if t >= 1.0:
        raise RegimeError(
            f"{where}: alpha*beta = {t:.3g} >= 1, outside the expansion regime"
        )
    if t > _BRIDGE_REGIME:
        warnings.warn(
            f"{where}: alpha*beta = {t:.3g} > {_BRIDGE_REGIME}; bridge drops "
            "higher-order terms and degrades here",
            RegimeWarning,
            stacklevel=3,
        )


def _g_tilde(t: float) -> float:
    return _f_x(t) + _p_dimless(t) + _c_dimless(t)


def c_t_constant(geom: WellGeometry, env: ThermalEnvironment) -> float:
    """The bridge offset C_T, proportional to L at fixed alpha beta:

        C_T = -L/3 + (2 L sqrt(t) / pi^(5/2)) (t - sqrt(pi) t^(3/2) - 1).
    """
    t = alpha_beta(geom, env)
    _check_regime(t, "c_t_constant")
    return geom.half_width_L * _c_dimless(t)


def partition_from_uncertainty(geom: WellGeometry, env: ThermalEnvironment) -> float:
    """Partition function reconstructed from the uncertainty sum.

    Approaches the Gaussian Z as alpha beta -> 0; the relative gap decays
    like sqrt(alpha beta) (about 2 percent at alpha beta = 0.01).
    """
    t = alpha_beta(geom, env)
    _check_regime(t, "partition_from_uncertainty")
    g = _g_tilde(t)
    if g <= 0.0:
        raise DomainError(
            f"bridge argument is non-positive at alpha*beta={t:.3g}"
        )
    return (_SQ2 / math.sqrt(_PI)) * g


def helmholtz_free_energy(
    geom: WellGeometry, env: ThermalEnvironment, mode: str = "uncertainty"
) -> float:
    """Helmholtz free energy F = -(1/beta) ln Z.

    mode 'uncertainty' uses the bridge partition function, 'gaussian' the
    closed-form (1/2) sqrt(pi / alpha beta).
    """
    if mode == "uncertainty":
        z = partition_from_uncertainty(geom, env)
    elif mode == "gaussian":
        z = 0.5 * math.sqrt(_PI / alpha_beta(geom, env))
    else:
        raise ValueError(f"unknown free energy mode {mode!r}")
    if z <= 0.0:
        raise DomainError("partition function must be positive for ln Z")
    return -math.log(z) / env.beta


def bridge_constants(geom: WellGeometry, env: ThermalEnvironment) -> BridgeConstants:
    """C_T together with the entropy-derivative pieces nu and gamma."""
    t = alpha_beta(geom, env)
    _check_regime(t, "bridge_constants")
    nu = -t * _df_x(t)
    gamma = -t * (_dp_dimless(t) + _dc_dimless(t))
    return BridgeConstants(
        c_t=geom.half_width_L * _c_dimless(t),
        nu=nu,
        gamma=gamma,
        at_temperature=env.temperature_T,
    )


def entropy(geom: WellGeometry, env: ThermalEnvironment) -> float:
    """Entropy S = -dF/dT of the bridge free energy, in units of k_B * 1.

    Evaluated analytically:

        S / k_B = ln Z_bridge + (nu + gamma) / G,

    and multiplied by env.k_B so SI environments get J/K.
    """
    t = alpha_beta(geom, env)
    _check_regime(t, "entropy")
    g = _g_tilde(t)
    if g <= 0.0:
        raise DomainError(f"bridge argument non-positive at alpha*beta={t:.3g}")
    consts = bridge_constants(geom, env)
    return env.k_B * (math.log((_SQ2 / math.sqrt(_PI)) * g) + (consts.nu + consts.gamma) / g)


def entropy_oracle(
    geom: WellGeometry,
    env: ThermalEnvironment,
    h: float,
    mode: str = "gaussian",
) -> float:
    """Finite-difference entropy -dF/dT with step h kelvin.

    The independent check on entropy(): differentiates the chosen free
    energy form numerically instead of using the analytic derivative.
    """
    if h <= 0.0:
        raise ValueError(f"step h must be > 0, got {h}")
    if env.temperature_T - h <= 0.0:
        raise ValueError("T - h must stay positive")

    def free_energy(T: float) -> float:
        bath = ThermalEnvironment(temperature_T=T, k_B=env.k_B)
        return helmholtz_free_energy(geom, bath, mode=mode)

    return -(free_energy(env.temperature_T + h) - free_energy(env.temperature_T - h)) / (
        2.0 * h
    )


def bridge_d_coefficient(geom: WellGeometry, env: ThermalEnvironment) -> float:
    """The uncertainty-expressed cycle coefficient (4/pi^2) Z_bridge^2.

    Equals nbar^2 = 1/(pi alpha beta) up to the bridge error, which is the
    identity the cycle efficiency rewrite relies on.
    """
    z = partition_from_uncertainty(geom, env)
    return 4.0 * z * z / _PI**2
