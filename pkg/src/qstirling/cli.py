"""Command-line front end.

    qstirling sweep [--preset fig1] [--l-min 0.2 --l-max 5 --steps 50]
                    [--hot 320 --cold 80] [--mass 9.109e-31]
                    [--pinned-n 1,2] [--quantities a,b] [--format csv]
                    [--out -] [--config FILE]
    qstirling cycle [--l 5] [--hot 320 --cold 80] [--mass ...]
                    [--mode exact_series] [--out -]

Precedence: command line > config file > preset defaults. The config file
is flat key=value text with keys matching the long flag names.

Exit codes: 0 success, 2 usage error, 1 runtime error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .constants import ELECTRON_MASS, NM
from .engine import CycleConfig, run_cycle
from .errors import QStirlingError
from .sweep import PRESETS, SweepSpec, preset_defaults, run_sweep, write_output
from .well import WellGeometry

USAGE_EXIT = 2
RUNTIME_EXIT = 1


class _UsageError(Exception):
    pass


def _parse_number_list(text: str, kind, flag: str):
    try:
        return tuple(kind(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise _UsageError(f"malformed value for {flag}: {text!r} ({exc})") from exc


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise _UsageError(
                        f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}"
                    )
                key, value = line.split("=", 1)
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path!r}: {exc}") from exc
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstirling",
        description="Thermal uncertainty relations and the quantum Stirling cycle "
        "for a 1-D infinite well.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a parameter sweep and emit CSV/JSON")
    sweep.add_argument("--preset", choices=PRESETS, default=None)
    sweep.add_argument("--l-min", type=float, default=None, help="half width, nm")
    sweep.add_argument("--l-max", type=float, default=None, help="half width, nm")
    sweep.add_argument("--steps", type=int, default=None)
    sweep.add_argument("--hot", type=float, default=None, help="hot bath, K")
    sweep.add_argument("--cold", type=float, default=None, help="cold bath, K")
    sweep.add_argument("--mass", type=float, default=None, help="particle mass, kg")
    sweep.add_argument("--pinned-n", default=None, help="comma list, e.g. 1,2")
    sweep.add_argument("--quantities", default=None, help="comma list for --preset custom")
    sweep.add_argument("--format", choices=("csv", "json"), default=None)
    sweep.add_argument("--out", default=None, help="output path, - for stdout")
    sweep.add_argument("--config", default=None, help="flat key=value config file")

    cycle = sub.add_parser("cycle", help="evaluate one Stirling cycle, dump JSON")
    cycle.add_argument("--l", type=float, default=5.0, help="half width, nm")
    cycle.add_argument("--hot", type=float, default=320.0)
    cycle.add_argument("--cold", type=float, default=80.0)
    cycle.add_argument("--mass", type=float, default=ELECTRON_MASS)
    cycle.add_argument("--series-tol", type=float, default=1e-15)
    cycle.add_argument("--mode", choices=("exact_series", "gaussian"), default="exact_series")
    cycle.add_argument("--out", default="-")
    return parser


_CONFIG_KEYS = {
    "preset": str,
    "l-min": float,
    "l-max": float,
    "steps": int,
    "hot": float,
    "cold": float,
    "mass": float,
    "pinned-n": str,
    "quantities": str,
    "format": str,
    "out": str,
}


def build_sweep_spec(args: argparse.Namespace) -> SweepSpec:
    """Merge CLI flags over config-file values over preset defaults."""
    file_values: dict[str, str] = {}
    if args.config:
        raw = _read_config_file(args.config)
        unknown = set(raw) - set(_CONFIG_KEYS)
        if unknown:
            raise _UsageError(f"unknown config keys: {sorted(unknown)}")
        file_values = raw

    def pick(flag: str, cli_value, conv):
        if cli_value is not None:
            return cli_value
        if flag in file_values:
            try:
                return conv(file_values[flag])
            except ValueError as exc:
                raise _UsageError(
                    f"malformed config value {flag}={file_values[flag]!r}"
                ) from exc
        return None

    preset = args.preset or file_values.get("preset") or "fig1"
    if preset not in PRESETS:
        raise _UsageError(f"unknown preset {preset!r}")
    base = preset_defaults(preset)

    overrides: dict = {}
    l_min = pick("l-min", args.l_min, float)
    l_max = pick("l-max", args.l_max, float)
    steps = pick("steps", args.steps, int)
    hot = pick("hot", args.hot, float)
    cold = pick("cold", args.cold, float)
    mass = pick("mass", args.mass, float)
    fmt = pick("format", args.format, str)
    out = pick("out", args.out, str)
    pinned_raw = args.pinned_n if args.pinned_n is not None else file_values.get("pinned-n")
    quantities_raw = (
        args.quantities if args.quantities is not None else file_values.get("quantities")
    )

    if l_min is not None:
        overrides["l_min"] = l_min
    if l_max is not None:
        overrides["l_max"] = l_max
    if steps is not None:
        overrides["steps"] = steps
    if hot is not None or cold is not None:
        overrides["temperatures"] = (
            hot if hot is not None else base.temperatures[0],
            cold if cold is not None else base.temperatures[-1],
        )
    if mass is not None:
        overrides["mass"] = mass
    if fmt is not None:
        overrides["output_format"] = fmt
    if out is not None:
        overrides["output_path"] = out
    if pinned_raw is not None:
        overrides["pinned_n"] = _parse_number_list(pinned_raw, int, "--pinned-n")
    if quantities_raw is not None:
        overrides["quantities"] = tuple(
            tok.strip() for tok in quantities_raw.split(",") if tok.strip()
        )

    try:
        return dataclasses.replace(base, **overrides)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _run_sweep_command(args: argparse.Namespace) -> int:
    spec = build_sweep_spec(args)
    rows = run_sweep(spec)
    write_output(rows, spec)
    return 0


def _run_cycle_command(args: argparse.Namespace) -> int:
    if args.l <= 0.0:
        raise _UsageError(f"--l must be > 0 nm, got {args.l}")
    if not args.hot >= args.cold > 0.0:
        raise _UsageError(
            f"need --hot >= --cold > 0, got hot={args.hot}, cold={args.cold}"
        )
    geom = WellGeometry(half_width_L=args.l * NM, mass_m=args.mass)
    cfg = CycleConfig(
        geom=geom,
        hot_T1=args.hot,
        cold_T2=args.cold,
        series_tol=args.series_tol,
        evaluation_mode=args.mode,
    )
    result = run_cycle(cfg)
    payload = dataclasses.asdict(result)
    payload["l_nm"] = args.l
    payload["hot_T1"] = args.hot
    payload["cold_T2"] = args.cold
    text = json.dumps(payload, indent=2) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return _run_sweep_command(args)
        return _run_cycle_command(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (QStirlingError, OSError, ValueError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return RUNTIME_EXIT


if __name__ == "__main__":
    sys.exit(main())
