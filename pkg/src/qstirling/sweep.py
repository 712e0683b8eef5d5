"""Parameter sweeps behind the CLI: presets, row evaluation, CSV/JSON output.

Each preset fixes a column set and an evaluation recipe:

    fig1  exact-series thermal sum dX + dP versus L at two temperatures
    fig2  closed-form thermal sum with the level index pinned (n = 1, 2)
    fig3  lower and upper branch of the thermal variance-sum bounds at
          pinned level index
    fig5  entropy versus the thermal sum at two temperatures
    fig8  efficiency envelope (achieved efficiency and Carnot ceiling)
          versus the hot-bath sum uncertainty

Lengths are accepted in nanometers and converted internally. fig1, fig2,
fig3 and fig8 run in SI units with the configured mass; fig5 evaluates the
scale-free bridge quantities in reduced units (hbar = m = k_B = 1, with L
and T read as plain numbers), since that is the only regime in which the
bridge expansion is valid across the swept range.

Rows carry an explicit regime_flag column: true marks rows whose physical
alpha*beta leaves the small-product regime, or where a quantity could not
be evaluated at all (emitted as NaN). Invalid rows are flagged, never
dropped. Output is deterministic byte-for-byte for identical inputs.
"""
from __future__ import annotations

import json
import math
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import ELECTRON_MASS, NM
from .engine import CycleConfig, carnot_limit, cycle_efficiency, run_cycle
from .errors import QStirlingError
from .thermal import (
    REGIME_ALPHA_BETA_MAX,
    RegimeWarning,
    ThermalEnvironment,
    alpha_beta,
    partition_function,
    reduced_environment,
    thermal_uncertainty,
    thermal_uncertainty_series,
    thermal_variance_p,
    thermal_variance_x,
)
from .bridge import entropy
from .well import WellGeometry, reduced_geometry

__all__ = ["SweepSpec", "run_sweep", "write_output", "preset_defaults", "PRESETS"]

PRESETS = ("fig1", "fig2", "fig3", "fig5", "fig8", "custom")

_PRESET_L_RANGES = {
    "fig1": (0.2, 5.0),
    "fig2": (0.2, 5.0),
    "fig3": (0.2, 5.0),
    "fig5": (0.5, 5.0),
    "fig8": (0.5, 4.3),
    "custom": (0.2, 5.0),
}


@dataclass(frozen=True)
class SweepSpec:
    """Validated sweep request. Lengths in nm, temperatures in kelvin."""

    preset: str = "fig1"
    l_min: float = 0.2
    l_max: float = 5.0
    steps: int = 50
    temperatures: tuple[float, ...] = (320.0, 80.0)
    pinned_n: tuple[int, ...] | None = None
    mass: float = ELECTRON_MASS
    output_format: str = "csv"
    output_path: str = "-"
    quantities: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}; choose from {PRESETS}")
        if self.l_min <= 0.0:
            raise ValueError(f"l_min must be > 0 nm, got {self.l_min}")
        if self.l_max <= self.l_min:
            raise ValueError(f"need l_min < l_max, got [{self.l_min}, {self.l_max}]")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if not self.temperatures:
            raise ValueError("temperatures must be nonempty")
        if any(t <= 0.0 for t in self.temperatures):
            raise ValueError(f"temperatures must be > 0, got {self.temperatures}")
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output_format must be csv or json, got {self.output_format!r}")
        if self.preset == "custom" and not self.quantities:
            raise ValueError("custom preset needs a nonempty quantity list")
        if self.pinned_n is not None and any(n < 1 for n in self.pinned_n):
            raise ValueError(f"pinned_n entries must be >= 1, got {self.pinned_n}")

    @property
    def hot(self) -> float:
        return self.temperatures[0]

    @property
    def cold(self) -> float:
        return self.temperatures[-1]

    def lengths_nm(self) -> np.ndarray:
        return np.linspace(self.l_min, self.l_max, self.steps)


def preset_defaults(preset: str) -> SweepSpec:
    """The default request for a preset: 320/80 K baths, standard ranges."""
    lo, hi = _PRESET_L_RANGES.get(preset, (0.2, 5.0))
    pinned = (1, 2) if preset in ("fig2", "fig3") else None
    quantities = ("sum_unc_series", "eta_direct") if preset == "custom" else ()
    return SweepSpec(
        preset=preset, l_min=lo, l_max=hi, pinned_n=pinned, quantities=quantities
    )


def _geom(spec: SweepSpec, L_nm: float) -> WellGeometry:
    return WellGeometry(half_width_L=L_nm * NM, mass_m=spec.mass)


def _closed_form_flag(spec: SweepSpec, L_nm: float, temps=None) -> bool:
    """True where the physical alpha*beta leaves the closed-form regime."""
    geom = _geom(spec, L_nm)
    temps = spec.temperatures if temps is None else temps
    return any(
        alpha_beta(geom, ThermalEnvironment(t)) > REGIME_ALPHA_BETA_MAX
        for t in temps
    )


def _guarded(fn) -> float:
    try:
        v = float(fn())
    except (QStirlingError, ValueError, OverflowError):
        return math.nan
    return v


# Custom-preset quantity registry: name -> (doc, fn(spec, L_nm) -> float).
def _q_sum_series(spec, L_nm):
    return thermal_uncertainty_series(_geom(spec, L_nm), ThermalEnvironment(spec.hot)).sum_value


def _q_sum_closed(spec, L_nm):
    return thermal_uncertainty(_geom(spec, L_nm), ThermalEnvironment(spec.hot)).sum_value


def _q_product(spec, L_nm):
    return thermal_uncertainty(_geom(spec, L_nm), ThermalEnvironment(spec.hot)).product


def _q_z_exact(spec, L_nm):
    return partition_function(_geom(spec, L_nm), ThermalEnvironment(spec.hot), "exact_series")


def _q_z_gaussian(spec, L_nm):
    return partition_function(_geom(spec, L_nm), ThermalEnvironment(spec.hot), "gaussian")


def _q_entropy_reduced(spec, L_nm):
    return entropy(reduced_geometry(L_nm), reduced_environment(spec.hot))


def _q_work(spec, L_nm):
    cfg = CycleConfig(geom=_geom(spec, L_nm), hot_T1=spec.hot, cold_T2=spec.cold)
    return run_cycle(cfg).work / cfg.k_B


def _q_eta_direct(spec, L_nm):
    cfg = CycleConfig(geom=_geom(spec, L_nm), hot_T1=spec.hot, cold_T2=spec.cold)
    return cycle_efficiency(cfg, "direct")


def _q_eta_uncertainty(spec, L_nm):
    cfg = CycleConfig(geom=_geom(spec, L_nm), hot_T1=spec.hot, cold_T2=spec.cold)
    return cycle_efficiency(cfg, "uncertainty")


def _q_carnot(spec, L_nm):
    return carnot_limit(spec.hot, spec.cold)


QUANTITIES = {
    "sum_unc_series": _q_sum_series,
    "sum_unc_closed": _q_sum_closed,
    "product_unc": _q_product,
    "partition_exact": _q_z_exact,
    "partition_gaussian": _q_z_gaussian,
    "entropy_kB_reduced": _q_entropy_reduced,
    "work_kB": _q_work,
    "eta_direct": _q_eta_direct,
    "eta_uncertainty": _q_eta_uncertainty,
    "carnot": _q_carnot,
}


def _rows_fig1(spec: SweepSpec) -> list[dict]:
    rows = []
    for L_nm in spec.lengths_nm():
        geom = _geom(spec, L_nm)
        row = {"L_nm": float(L_nm)}
        for T in spec.temperatures:
            row[f"sum_unc_T{T:g}"] = _guarded(
                lambda: thermal_uncertainty_series(geom, ThermalEnvironment(T)).sum_value
            )
        row["regime_flag"] = any(
            not math.isfinite(v) for k, v in row.items() if k != "L_nm"
        )
        rows.append(row)
    return rows


def _rows_fig2(spec: SweepSpec) -> list[dict]:
    pinned = spec.pinned_n or (1, 2)
    env = ThermalEnvironment(spec.hot)
    rows = []
    for L_nm in spec.lengths_nm():
        geom = _geom(spec, L_nm)
        row = {"L_nm": float(L_nm)}
        for n in pinned:
            row[f"sum_unc_n{n}"] = _guarded(
                lambda: thermal_uncertainty(geom, env, pinned_n=n).sum_value
            )
        row["regime_flag"] = _closed_form_flag(spec, L_nm, temps=(spec.hot,))
        rows.append(row)
    return rows


def _rows_fig3(spec: SweepSpec) -> list[dict]:
    pinned = spec.pinned_n or (1, 2)
    env = ThermalEnvironment(spec.hot)
    rows = []
    for L_nm in spec.lengths_nm():
        geom = _geom(spec, L_nm)
        row = {"L_nm": float(L_nm)}
        for n in pinned:
            t = 1.0 / (math.pi * n * n)
            row[f"lower_n{n}"] = _guarded(
                lambda: thermal_variance_x(geom, env, mode="simplified", pinned_n=n)
                + thermal_variance_p(geom, env, pinned_n=n)
            )
            row[f"upper_n{n}"] = _guarded(
                lambda: 4.0 * geom.half_width_L**2 / 3.0
                - (8.0 * geom.half_width_L**2 * math.sqrt(t) / math.pi**2.5)
                * (math.exp(-t) - math.sqrt(math.pi * t))
                + (geom.hbar * n) ** 2 * math.pi**3 / (4.0 * geom.half_width_L**2)
            )
        row["regime_flag"] = _closed_form_flag(spec, L_nm, temps=(spec.hot,))
        rows.append(row)
    return rows


def _rows_fig5(spec: SweepSpec) -> list[dict]:
    rows = []
    for L_nm in spec.lengths_nm():
        geom = reduced_geometry(float(L_nm))
        env_hot = reduced_environment(spec.hot)
        row = {
            "sum_unc": _guarded(
                lambda: thermal_uncertainty(geom, env_hot).sum_value
            )
        }
        for T in spec.temperatures:
            row[f"entropy_T{T:g}"] = _guarded(
                lambda: entropy(geom, reduced_environment(T))
            )
        row["regime_flag"] = any(
            alpha_beta(geom, reduced_environment(t)) > 0.1 for t in spec.temperatures
        ) or any(not math.isfinite(v) for v in row.values())
        rows.append(row)
    rows.sort(key=lambda r: r["sum_unc"])
    return rows


def _rows_fig8(spec: SweepSpec) -> list[dict]:
    rows = []
    carnot = carnot_limit(spec.hot, spec.cold)
    env_hot = ThermalEnvironment(spec.hot)
    for L_nm in spec.lengths_nm():
        geom = _geom(spec, L_nm)
        cfg = CycleConfig(geom=geom, hot_T1=spec.hot, cold_T2=spec.cold)
        row = {
            "sum_unc": _guarded(
                lambda: thermal_uncertainty_series(geom, env_hot).sum_value
            ),
            "eta_lower": _guarded(lambda: cycle_efficiency(cfg, "direct")),
            "eta_upper": carnot,
        }
        row["regime_flag"] = any(not math.isfinite(v) for v in row.values())
        rows.append(row)
    rows.sort(key=lambda r: r["sum_unc"])
    return rows


def _rows_custom(spec: SweepSpec) -> list[dict]:
    unknown = [q for q in spec.quantities if q not in QUANTITIES]
    if unknown:
        raise ValueError(
            f"unknown quantities {unknown}; available: {sorted(QUANTITIES)}"
        )
    rows = []
    for L_nm in spec.lengths_nm():
        row = {"L_nm": float(L_nm)}
        for q in spec.quantities:
            row[q] = _guarded(lambda: QUANTITIES[q](spec, float(L_nm)))
        row["regime_flag"] = _closed_form_flag(spec, L_nm) or any(
            not math.isfinite(v) for k, v in row.items() if k != "L_nm"
        )
        rows.append(row)
    return rows


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate the sweep and return its rows, ordered by the first column."""
    dispatch = {
        "fig1": _rows_fig1,
        "fig2": _rows_fig2,
        "fig3": _rows_fig3,
        "fig5": _rows_fig5,
        "fig8": _rows_fig8,
        "custom": _rows_custom,
    }
    with warnings.catch_warnings():
        # Regime information is carried by the flag column instead.
        warnings.simplefilter("ignore", RegimeWarning)
        return dispatch[spec.preset](spec)


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render_csv(rows: list[dict]) -> str:
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_value(row[k]) for k in header))
    return "\n".join(lines) + "\n"


def render_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def write_output(rows: list[dict], spec: SweepSpec) -> None:
    """Serialize rows in the format ``spec`` asks for, to its path or stdout.

    CSV uses a header row, 17 significant digits, LF line endings, UTF-8.
    JSON is an array of row objects with the same keys. Identical inputs
    produce byte-identical output.
    """
    if not rows:
        raise ValueError("refusing to write an empty sweep")
    text = render_csv(rows) if spec.output_format == "csv" else render_json(rows)
    if spec.output_path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(spec.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {spec.output_path!r}: {exc}") from exc
