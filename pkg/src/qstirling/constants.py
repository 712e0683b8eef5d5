"""Physical constants (SI) and reduced-unit helpers.

CODATA 2018 values. Everything downstream takes the constants through
``WellGeometry`` / ``ThermalEnvironment`` fields, so any of them can be
overridden; the reduced-unit constructors set hbar = k_B = m = 1.
"""

HBAR = 1.054571817e-34
"""Reduced Planck constant, J s."""

K_B = 1.380649e-23
"""Boltzmann constant, J/K (exact since the 2019 SI redefinition)."""

ELECTRON_MASS = 9.1093837015e-31
"""Electron rest mass, kg. Default particle mass for nm-scale wells."""

NM = 1e-9
"""One nanometer in meters."""
