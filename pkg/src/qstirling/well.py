"""Single-particle physics of the 1-D infinite well.

The well occupies x in [0, 2L] where L is the half width. Eigenstates and
spectrum:

    psi_n(x) = sqrt(1/L) sin(n pi x / 2L),    E_n = n^2 alpha,
    alpha    = pi^2 hbar^2 / (2 m (2L)^2).

All moments and matrix elements below are closed forms; the quadrature
oracle in the test suite checks each of them to 1e-10 relative. Everything
is pure and safe for concurrent use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import ELECTRON_MASS, HBAR
from .errors import DomainError

__all__ = [
    "WellGeometry",
    "EigenMoments",
    "reduced_geometry",
    "energy_level",
    "wavefunction_value",
    "wavefunction_derivative",
    "eigenstate_moments",
    "eigenstate_product_uncertainty",
    "position_matrix_element",
    "momentum_matrix_coefficient",
    "doubled_well_energy",
    "position_operator",
    "momentum_operator",
]


@dataclass(frozen=True)
class WellGeometry:
    """Geometry and constants of one well.

    half_width_L : half width L in meters (the well spans [0, 2L])
    mass_m       : particle mass in kg
    hbar         : action scale; override for reduced units
    """

    half_width_L: float
    mass_m: float = ELECTRON_MASS
    hbar: float = HBAR

    def __post_init__(self):
        if self.half_width_L <= 0.0:
            raise ValueError(f"half_width_L must be > 0, got {self.half_width_L}")
        if self.mass_m <= 0.0:
            raise ValueError(f"mass_m must be > 0, got {self.mass_m}")
        if self.hbar <= 0.0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")

    @property
    def width(self) -> float:
        return 2.0 * self.half_width_L

    @property
    def alpha(self) -> float:
        """Energy scale: E_n = n^2 alpha."""
        return (math.pi * self.hbar) ** 2 / (2.0 * self.mass_m * self.width**2)


def reduced_geometry(half_width_L: float = 1.0, mass_m: float = 1.0) -> WellGeometry:
    """Geometry in reduced units hbar = 1 (pair with a k_B = 1 environment)."""
    return WellGeometry(half_width_L=half_width_L, mass_m=mass_m, hbar=1.0)


def _check_level(n: int, name: str = "n") -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"quantum number {name} must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"quantum number {name} must be >= 1, got {n}")
    return int(n)


@dataclass(frozen=True)
class EigenMoments:
    """First and second moments of x and p in one eigenstate."""

    mean_x: float
    mean_x2: float
    mean_p: float
    mean_p2: float

    def __post_init__(self):
        if self.mean_x2 < self.mean_x**2:
            raise ValueError("mean_x2 must be >= mean_x^2")

    @property
    def var_x(self) -> float:
        return self.mean_x2 - self.mean_x**2

    @property
    def var_p(self) -> float:
        return self.mean_p2 - self.mean_p**2


def energy_level(geom: WellGeometry, n: int) -> float:
    """E_n = n^2 pi^2 hbar^2 / (2 m (2L)^2) = n^2 alpha."""
    n = _check_level(n)
    return n * n * geom.alpha


def wavefunction_value(geom: WellGeometry, n: int, x):
    """psi_n(x) = sqrt(1/L) sin(n pi x / 2L) for x in [0, 2L].

    Accepts a scalar or ndarray x. Raises DomainError outside the well.
    """
    n = _check_level(n)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0) or np.any(xa > geom.width):
        raise DomainError(
            f"x must lie in [0, {geom.width}], got values outside the well"
        )
    amp = math.sqrt(1.0 / geom.half_width_L)
    out = amp * np.sin(n * math.pi * xa / geom.width)
    return float(out) if np.isscalar(x) or xa.ndim == 0 else out


def wavefunction_derivative(geom: WellGeometry, n: int, x):
    """d psi_n / dx, used by the momentum quadrature oracle."""
    n = _check_level(n)
    xa = np.asarray(x, dtype=float)
    k = n * math.pi / geom.width
    amp = math.sqrt(1.0 / geom.half_width_L)
    out = amp * k * np.cos(k * xa)
    return float(out) if np.isscalar(x) or xa.ndim == 0 else out


def eigenstate_moments(geom: WellGeometry, n: int) -> EigenMoments:
    """Closed-form moments for eigenstate n:

    <x>   = L
    <x^2> = (2L)^2 (1/3 - 1/(2 n^2 pi^2))
    <p>   = 0
    <p^2> = n^2 pi^2 hbar^2 / (4 L^2)
    """
    n = _check_level(n)
    L = geom.half_width_L
    mean_x = L
    mean_x2 = geom.width**2 * (1.0 / 3.0 - 1.0 / (2.0 * (n * math.pi) ** 2))
    mean_p2 = (n * math.pi * geom.hbar) ** 2 / (4.0 * L * L)
    return EigenMoments(mean_x=mean_x, mean_x2=mean_x2, mean_p=0.0, mean_p2=mean_p2)


def eigenstate_product_uncertainty(geom: WellGeometry, n: int) -> float:
    """dx * dp = (hbar/2) sqrt((n pi)^2 / 3 - 2), always >= hbar/2."""
    n = _check_level(n)
    return 0.5 * geom.hbar * math.sqrt((n * math.pi) ** 2 / 3.0 - 2.0)


def position_matrix_element(geom: WellGeometry, m: int, n: int) -> float:
    """<m|x|n> in the energy basis.

    L on the diagonal; zero when m + n is even (parity); otherwise

        <m|x|n> = -16 L m n / (pi^2 (m^2 - n^2)^2).

    Symmetric in (m, n).
    """
    m = _check_level(m, "m")
    n = _check_level(n, "n")
    if m == n:
        return geom.half_width_L
    if (m + n) % 2 == 0:
        return 0.0
    return -16.0 * geom.half_width_L * m * n / (math.pi**2 * (m * m - n * n) ** 2)


def momentum_matrix_coefficient(geom: WellGeometry, m: int, n: int) -> float:
    """Real coefficient c of the purely imaginary element <m|p|n> = i c.

    Zero on the diagonal and for even m + n; otherwise

        c = -4 hbar m n / (2L (m^2 - n^2)),

    antisymmetric under swapping m and n.
    """
    m = _check_level(m, "m")
    n = _check_level(n, "n")
    if m == n or (m + n) % 2 == 0:
        return 0.0
    return -4.0 * geom.hbar * m * n / (geom.width * (m * m - n * n))


def doubled_well_energy(geom: WellGeometry, n: int) -> float:
    """Level n of the midpoint-partitioned well: E = (2n)^2 alpha.

    Inserting a wall at x = L halves the width, so each level of the split
    well coincides with level 2n of the original and is doubly degenerate.
    """
    n = _check_level(n)
    return 4.0 * n * n * geom.alpha


def position_operator(
    geom: WellGeometry, dim: int, nondimensional: bool = False
) -> np.ndarray:
    """Position matrix truncated to the lowest ``dim`` levels (real symmetric).

    With nondimensional=True the operator is X/L.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    idx = np.arange(1, dim + 1, dtype=float)
    m = idx[:, None]
    n = idx[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        off = -16.0 * geom.half_width_L * m * n / (math.pi**2 * (m * m - n * n) ** 2)
    X = np.where((m + n) % 2 == 1, off, 0.0)
    np.fill_diagonal(X, geom.half_width_L)
    if nondimensional:
        X = X / geom.half_width_L
    return X


def momentum_operator(
    geom: WellGeometry, dim: int, nondimensional: bool = False
) -> np.ndarray:
    """Momentum matrix truncated to the lowest ``dim`` levels (complex Hermitian).

    With nondimensional=True the operator is P L / hbar.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    idx = np.arange(1, dim + 1, dtype=float)
    m = idx[:, None]
    n = idx[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        coeff = -4.0 * geom.hbar * m * n / (geom.width * (m * m - n * n))
    C = np.where((m + n) % 2 == 1, coeff, 0.0)
    np.fill_diagonal(C, 0.0)
    P = 1j * C
    if nondimensional:
        P = P * (geom.half_width_L / geom.hbar)
    return P
