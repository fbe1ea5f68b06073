"""Command-line front end: figure data as CSV/JSON and single-point queries.

Frequencies on the command line and in the output are ordinary
frequencies in GHz (omega / 2pi).
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import __version__
from .characterize import (
    DecoupledCavity,
    critical_photon_number,
    extract_from_energy,
    extract_from_phase,
    lorentzian_deviation,
    sweep_vs_boundary,
)
from .device import CONFIG_KEYS, BoundaryCondition, DeviceParams, ValidationError, load_config, make_device
from .modes import DecoupledError
from .numerics import NumericsError
from .spectroscopy import compute_spectrum
from .squid import UntunableError, flux_for_omega3, omega3, tunable_range

TOOL = "tunable-coupler"
EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3
GHZ = 2 * math.pi * 1e9

COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "params": {},
    "omega3-sweep": {"flux_min": 0.0, "flux_max": 1.0, "points": 101},
    "spectrum": {"fmin_ghz": 9.0, "fmax_ghz": 11.0, "points": 2001},
    "cavity": {},
    "cavity-sweep": {"omega3_list_ghz": [9.0, 9.2, 9.4, 9.6, 9.8, 9.9, 9.95]},
    "ncrit": {"l3_min_mm": 2.0, "l3_max_mm": 5.0, "points": 61, "l3_list_mm": None},
}
DEFAULT_FORMAT = {"cavity": "json"}
SETTING_KEYS = {"phiex", "flux", "omega3_ghz"}.union(*COMMAND_DEFAULTS.values())


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


def _fmt(x: Any) -> str:
    if x is None:
        return "nan"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.11e}"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def _json_safe(x: Any) -> Any:
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def render(
    columns: Sequence[str], rows: list[Sequence[Any]], meta: dict[str, Any], fmt: str,
    extra: dict[str, Any] | None = None,
) -> str:
    if fmt == "json":
        doc = {"tool": TOOL, "version": __version__, "config": meta}
        if extra:
            doc.update(extra)
        doc["rows"] = [dict(zip(columns, row)) for row in rows]
        return json.dumps(_json_safe(doc), indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# {TOOL} {__version__}\n")
    buf.write(f"# config: {json.dumps(_json_safe(meta), sort_keys=True)}\n")
    for key, value in (extra or {}).items():
        buf.write(f"# {key}: {json.dumps(_json_safe(value), sort_keys=True)}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _boundary(dev: DeviceParams, args: argparse.Namespace, cfg: dict[str, Any]) -> tuple[BoundaryCondition, dict]:
    given = {k: getattr(args, k) for k in ("phiex", "flux", "omega3_ghz") if getattr(args, k) is not None}
    if not given:
        given = {k: cfg[k] for k in ("phiex", "flux", "omega3_ghz") if k in cfg}
    if len(given) != 1:
        raise CliError("exactly one of --phiex, --flux, --omega3-ghz is required")
    (key, value), = given.items()
    if key == "phiex":
        bc = BoundaryCondition(value)
    elif key == "flux":
        bc = BoundaryCondition.from_flux(value)
    else:
        bc = flux_for_omega3(dev, value * GHZ)
    meta = {key: value, "phi_ex": bc.phi_ex, "flux_over_flux_quantum": bc.flux_over_flux_quantum}
    return bc, meta


def _option(args: argparse.Namespace, cfg: dict[str, Any], name: str) -> Any:
    value = getattr(args, name, None)
    if value is None:
        value = cfg.get(name, COMMAND_DEFAULTS[args.command][name])
    return value


def cmd_params(dev: DeviceParams, args, cfg, meta) -> tuple:
    lo, hi = tunable_range(dev)
    d = dev.to_display()
    rows = [
        ("v", d["v_m_per_s"], "m/s", dev.v, "m/s"),
        ("impedance", d["impedance_ohm"], "ohm", dev.impedance, "ohm"),
        ("l2", d["l2_mm"], "mm", dev.l2, "m"),
        ("l3", d["l3_mm"], "mm", dev.l3, "m"),
        ("cs", d["cs_ff"], "fF", dev.cs, "F"),
        ("ic", d["ic_ua"], "uA", dev.ic, "A"),
        ("es", dev.es, "J", dev.es, "J"),
        ("cap_per_len", dev.cap_per_len * 1e12, "pF/m", dev.cap_per_len, "F/m"),
        ("ind_per_len", dev.ind_per_len * 1e9, "nH/m", dev.ind_per_len, "H/m"),
        ("omega2", dev.omega2 / GHZ, "GHz", dev.omega2, "rad/s"),
        ("omega3_min", lo / GHZ, "GHz", lo, "rad/s"),
        ("omega3_max", hi / GHZ, "GHz", hi, "rad/s"),
    ]
    return ("quantity", "display_value", "display_unit", "si_value", "si_unit"), rows, None


def cmd_omega3_sweep(dev: DeviceParams, args, cfg, meta) -> tuple:
    fmin, fmax = _option(args, cfg, "flux_min"), _option(args, cfg, "flux_max")
    points = int(_option(args, cfg, "points"))
    if points < 2:
        raise CliError("points must be at least 2")
    meta.update(flux_min=fmin, flux_max=fmax, points=points)
    f2 = dev.omega2 / GHZ
    rows = []
    for flux in np.linspace(fmin, fmax, points):
        rows.append((flux, omega3(dev, BoundaryCondition.from_flux(flux)) / GHZ, f2))
    return ("flux_over_flux_quantum", "omega3_ghz", "omega2_ghz"), rows, None


def cmd_spectrum(dev: DeviceParams, args, cfg, meta) -> tuple:
    bc, bc_meta = _boundary(dev, args, cfg)
    fmin, fmax = _option(args, cfg, "fmin_ghz"), _option(args, cfg, "fmax_ghz")
    points = _option(args, cfg, "points")
    meta.update(bc_meta, fmin_ghz=fmin, fmax_ghz=fmax, points=points)
    spec = compute_spectrum(dev, bc, fmin * 1e9, fmax * 1e9, points)
    rows = list(zip(spec.omega_grid / GHZ, spec.phase_shift, spec.phase_unwrapped, spec.e_over_p))
    return ("freq_ghz", "phase_rad", "phase_unwrapped_rad", "e_over_p_s"), rows, None


def _method_row(p) -> tuple:
    return (p.method.value, p.omega_c / GHZ, p.kappa / GHZ, p.window[0] / GHZ, p.window[1] / GHZ)


def cmd_cavity(dev: DeviceParams, args, cfg, meta) -> tuple:
    bc, bc_meta = _boundary(dev, args, cfg)
    meta.update(bc_meta)
    columns = ("method", "omega_c_ghz", "kappa_ghz", "window_lo_ghz", "window_hi_ghz")
    w3 = omega3(dev, bc)
    extra: dict[str, Any] = {"omega3_ghz": w3 / GHZ, "omega2_ghz": dev.omega2 / GHZ}
    try:
        energy = extract_from_energy(dev, bc)
    except DecoupledCavity as exc:
        extra.update(status="decoupled", message=str(exc))
        return columns, [], extra
    try:
        phase = extract_from_phase(dev, bc)
    except NumericsError as exc:
        extra.update(status="phase_failed", message=str(exc))
        return columns, [_method_row(energy)], extra
    rows = [_method_row(phase), _method_row(energy)]
    extra.update(
        status="ok",
        agreement={
            "omega_c_rel_diff": abs(phase.omega_c - energy.omega_c) / phase.omega_c,
            "kappa_rel_diff": abs(phase.kappa - energy.kappa) / phase.kappa,
        },
        lorentzian_max_rel_deviation=lorentzian_deviation(dev, bc, phase),
    )
    return columns, rows, extra


def cmd_cavity_sweep(dev: DeviceParams, args, cfg, meta) -> tuple:
    grid = [float(x) for x in _option(args, cfg, "omega3_list_ghz")]
    meta.update(omega3_list_ghz=grid)
    rows = []
    for row in sweep_vs_boundary(dev, [f * GHZ for f in grid]):
        flux = None if row.phi_ex is None else row.phi_ex / (2 * math.pi)
        p, e = row.phase, row.energy
        rows.append((
            row.omega3 / GHZ,
            flux,
            p.omega_c / GHZ if p else None,
            p.kappa / GHZ if p else None,
            e.omega_c / GHZ if e else None,
            e.kappa / GHZ if e else None,
            row.status,
        ))
    columns = ("omega3_ghz", "flux_over_flux_quantum", "omega_c_phase", "kappa_phase",
               "omega_c_energy", "kappa_energy", "status")
    return columns, rows, None


def cmd_ncrit(dev: DeviceParams, args, cfg, meta) -> tuple:
    grid = _option(args, cfg, "l3_list_mm")
    if grid is None:
        lo, hi = _option(args, cfg, "l3_min_mm"), _option(args, cfg, "l3_max_mm")
        points = int(_option(args, cfg, "points"))
        meta.update(l3_min_mm=lo, l3_max_mm=hi, points=points)
        grid = np.linspace(lo, hi, points)
    else:
        meta.update(l3_list_mm=list(grid))
    rows = []
    for l3_mm in grid:
        if not l3_mm > 0:
            raise ValidationError("l3", "must be positive")
        try:
            res = critical_photon_number(dev, l3_mm / 1e3)
        except ZeroDivisionError:
            rows.append((l3_mm, math.inf, False, "divergent"))
            continue
        rows.append((l3_mm, res.n_crit, res.tunable_to_omega2, "ok"))
    return ("l3_mm", "n_crit", "tunable", "status"), rows, None


COMMANDS = {
    "params": cmd_params,
    "omega3-sweep": cmd_omega3_sweep,
    "spectrum": cmd_spectrum,
    "cavity": cmd_cavity,
    "cavity-sweep": cmd_cavity_sweep,
    "ncrit": cmd_ncrit,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("output")
    g.add_argument("--config", help="JSON file with device and command settings")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--output", default="-", help="output path, '-' for stdout")
    d = common.add_argument_group("device (defaults: reference device)")
    for key in CONFIG_KEYS:
        d.add_argument("--" + key.replace("_", "-"), dest=key, type=float)

    boundary = argparse.ArgumentParser(add_help=False)
    b = boundary.add_mutually_exclusive_group()
    b.add_argument("--phiex", type=float, help="SQUID phase phi_ex, radians")
    b.add_argument("--flux", type=float, help="external flux in flux quanta")
    b.add_argument("--omega3-ghz", type=float, help="target omega3/2pi, GHz")

    parser = argparse.ArgumentParser(prog=TOOL, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("params", parents=[common], help="resolved device parameters")

    p = sub.add_parser("omega3-sweep", parents=[common], help="omega3 against external flux")
    p.add_argument("--flux-min", type=float)
    p.add_argument("--flux-max", type=float)
    p.add_argument("--points", type=int)

    p = sub.add_parser("spectrum", parents=[common, boundary], help="phase shift and E/P spectra")
    p.add_argument("--fmin-ghz", type=float)
    p.add_argument("--fmax-ghz", type=float)
    p.add_argument("--points", type=int)

    sub.add_parser("cavity", parents=[common, boundary], help="omega_c and kappa by both methods")

    p = sub.add_parser("cavity-sweep", parents=[common], help="omega_c and kappa against omega3")
    p.add_argument("--omega3-ghz", dest="omega3_list_ghz", type=float, nargs="+")

    p = sub.add_parser("ncrit", parents=[common], help="critical photon number against L3")
    p.add_argument("--l3-min-mm", type=float)
    p.add_argument("--l3-max-mm", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--l3-list-mm", type=float, nargs="+")
    return parser


def run(args: argparse.Namespace) -> str:
    """Execute a parsed command and return the rendered output."""
    cfg = load_config(args.config) if args.config else {}
    known = set(CONFIG_KEYS) | SETTING_KEYS | {"format"}
    for key in cfg:
        if key not in known:
            raise ValidationError(key, "is not a recognised config key")
    device_cfg = {k: v for k, v in cfg.items() if k in CONFIG_KEYS}
    dev = make_device(device_cfg, **{k: getattr(args, k) for k in CONFIG_KEYS})
    fmt = args.format or cfg.get("format") or DEFAULT_FORMAT.get(args.command, "csv")
    if fmt not in ("csv", "json"):
        raise CliError(f"format must be csv or json, got {fmt!r}")
    meta: dict[str, Any] = {"command": args.command, "device": dev.to_display()}
    columns, rows, extra = COMMANDS[args.command](dev, args, cfg, meta)
    return render(columns, rows, meta, fmt, extra)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = run(args)
        if args.output == "-":
            sys.stdout.write(text)
        else:
            with open(args.output, "w", newline="\n") as fh:
                fh.write(text)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValidationError, UntunableError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericsError, DecoupledError, ArithmeticError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
