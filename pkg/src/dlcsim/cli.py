"""Command-line front end.

Every subcommand reads a flat JSON scenario (bundled defaults, then
``--config``, then ``--set key=value`` overrides) and writes CSV to stdout or
``--out``. Exit codes: 0 success, 2 configuration error, 3 domain error,
4 unreachable efficiency target.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import atmosphere, presets, pv
from .constants import celsius_to_kelvin
from .errors import DomainError, UnreachableTargetError
from .figures import FIGURES, build_figure, format_value, to_csv
from .linefit import fit_arrays
from .pipeline import (
    EvalPath,
    ScenarioConfig,
    StageReport,
    SweepAxis,
    coverage_radius,
    eta_om,
    run_scenario,
    sweep,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_UNREACHABLE = 4

_NUMERIC_KEYS = {
    "wavelength_nm",
    "supply_power_w",
    "distance_km",
    "cell_temperature_c",
    "visibility_km",
    "eta_target",
    "received_power_w",
}
_KEYS = _NUMERIC_KEYS | {"air_condition", "path"}
REPORT_FIELDS = ["p_s", "p_l", "p_r", "p_m", "eta_el", "eta_lt", "eta_le", "eta_o", "status"]


class ConfigError(Exception):
    pass


@dataclass
class RunManifest:
    config_path: str | None
    command: str
    output_path: str | None
    emitted_rows: int
    checksum: str


def load_config(path: str | None, overrides: list[str] | None = None) -> dict:
    cfg = presets.default_scenario()
    if path:
        try:
            user = json.loads(Path(path).read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config must be a JSON object")
        cfg.update(user)
    for item in overrides or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        try:
            cfg[key.strip()] = json.loads(value)
        except json.JSONDecodeError:
            cfg[key.strip()] = value
    unknown = set(cfg) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in _NUMERIC_KEYS:
        value = cfg.get(key)
        if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
            raise ConfigError(f"{key} must be a number, got {value!r}")
    try:
        atmosphere.Regime(cfg["air_condition"])
        EvalPath(cfg["path"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg["wavelength_nm"] not in presets.WAVELENGTHS_NM:
        raise ConfigError(f"wavelength_nm must be one of {presets.WAVELENGTHS_NM}")
    return cfg


def scenario_from_config(cfg: dict) -> ScenarioConfig:
    return ScenarioConfig.from_presets(
        int(cfg["wavelength_nm"]),
        p_s=float(cfg["supply_power_w"]),
        d_km=float(cfg["distance_km"]),
        t_cell_c=float(cfg["cell_temperature_c"]),
        regime=cfg["air_condition"],
        kappa_km=cfg.get("visibility_km"),
        path=cfg["path"],
    )


def parse_grid(text: str) -> list[float]:
    """``start:stop:num`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            return [float(v) for v in np.linspace(float(start), float(stop), int(num))]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from exc


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines += [",".join(format_value(v) if not isinstance(v, str) else v for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _report_row(report: StageReport) -> list:
    return [getattr(report, f) if f != "status" else report.status for f in REPORT_FIELDS]


def cmd_efficiency(args, cfg: dict) -> str:
    report = run_scenario(scenario_from_config(cfg))
    return _csv(REPORT_FIELDS, [_report_row(report)])


def cmd_figure(args, cfg: dict) -> str:
    grid = parse_grid(args.grid) if args.grid else None
    return to_csv(build_figure(args.figure_id, scenario_from_config(cfg), grid))


def cmd_sweep(args, cfg: dict) -> str:
    scenario = scenario_from_config(cfg)
    axis = SweepAxis(args.axis)
    rows = sweep(scenario, axis, parse_grid(args.grid), received_power_w=cfg.get("received_power_w"))
    result_fields = None
    for row in rows:
        if row.result is not None:
            result_fields = [f.name for f in fields(row.result) if f.name != "raw_eta_o"]
            break
    if result_fields is None:
        raise DomainError("; ".join(sorted({r.error for r in rows if r.error})))
    header = ["x", *result_fields, "error"]
    out = []
    for row in rows:
        if row.result is None:
            out.append([row.x, *([float("nan")] * len(result_fields)), row.error])
        else:
            values = asdict(row.result)
            out.append([row.x, *(values[f] for f in result_fields), ""])
    return _csv(header, out)


def cmd_mpp(args, cfg: dict) -> str:
    scenario = scenario_from_config(cfg)
    p_r = float(cfg["received_power_w"])
    point = pv.find_mpp(scenario.panel, p_r, celsius_to_kelvin(scenario.t_cell_c))
    p_m_fit = pv.mpp_from_fit(scenario.mpp_line, p_r)
    header = ["p_r", "v_o", "i_o", "p_m", "eta_le", "p_m_fit", "eta_lem_fit"]
    row = [p_r, point.v_o, point.i_o, point.p_o, pv.eta_le(point.p_o, p_r), p_m_fit, pv.eta_lem(scenario.mpp_line, p_r)]
    return _csv(header, [row])


def cmd_attenuation(args, cfg: dict) -> str:
    scenario = scenario_from_config(cfg)
    cond, wl = scenario.condition, scenario.wavelength
    header = ["wavelength_nm", "air_condition", "visibility_km", "rho", "alpha_per_km", "distance_km", "eta_lt"]
    row = [
        wl.lambda_nm,
        cond.regime.value,
        cond.kappa_km,
        atmosphere.size_distribution_rho(cond),
        atmosphere.attenuation_coefficient(cond, wl),
        scenario.d_km,
        atmosphere.eta_lt(cond, wl, scenario.d_km),
    ]
    return _csv(header, [row])


def read_samples(path: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read samples {path}: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [n.strip() for n in reader.fieldnames] != ["x", "y"]:
        raise ConfigError("samples CSV must have the header 'x,y'")
    xs, ys = [], []
    for lineno, rec in enumerate(reader, start=2):
        try:
            xs.append(float(rec["x"]))
            ys.append(float(rec["y"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed sample on line {lineno}: {exc}") from exc
    return np.array(xs), np.array(ys)


def cmd_fit(args, cfg: dict) -> str:
    x, y = read_samples(args.samples_csv)
    result = fit_arrays(x, y)
    return _csv(["slope", "intercept", "r_squared", "n_samples"], [list(asdict(result).values())])


def cmd_coverage(args, cfg: dict) -> str:
    scenario = scenario_from_config(cfg)
    target = float(cfg["eta_target"])
    radius = coverage_radius(scenario, target)
    header = ["wavelength_nm", "air_condition", "supply_power_w", "eta_target", "eta_om_at_zero", "radius_km"]
    row = [scenario.wavelength.lambda_nm, scenario.condition.regime.value, scenario.p_s, target, eta_om(scenario, eta_lt=1.0), radius]
    return _csv(header, [row])


COMMANDS = {
    "efficiency": cmd_efficiency,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
    "mpp": cmd_mpp,
    "attenuation": cmd_attenuation,
    "fit": cmd_fit,
    "coverage": cmd_coverage,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario file")
    common.add_argument("--out", help="write CSV here instead of stdout")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a config key")
    common.add_argument("--manifest", help="write a JSON run manifest here")

    parser = argparse.ArgumentParser(prog="dlcsim", description="Distributed laser charging efficiency simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("efficiency", parents=[common], help="per-stage powers and efficiencies")
    fig = sub.add_parser("figure", parents=[common], help="figure dataset as CSV")
    fig.add_argument("figure_id", choices=sorted(FIGURES))
    fig.add_argument("--grid", help="x grid as start:stop:num or a,b,c")
    sw = sub.add_parser("sweep", parents=[common], help="scenario sweep along one axis")
    sw.add_argument("--axis", required=True, choices=[a.value for a in SweepAxis])
    sw.add_argument("--grid", required=True, help="start:stop:num or a,b,c")
    sub.add_parser("mpp", parents=[common], help="maximum power point at received_power_w")
    sub.add_parser("attenuation", parents=[common], help="atmospheric attenuation at distance_km")
    fit = sub.add_parser("fit", parents=[common], help="least-squares line through an x,y CSV")
    fit.add_argument("samples_csv")
    sub.add_parser("coverage", parents=[common], help="distance where eta_om falls to eta_target")
    return parser


def write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.set)
        text = COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnreachableTargetError as exc:
        print(f"unreachable target: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    write_output(text, args.out)
    if args.manifest:
        manifest = RunManifest(
            config_path=args.config,
            command=args.command if args.command != "figure" else f"figure {args.figure_id}",
            output_path=args.out,
            emitted_rows=text.count("\n") - 1,
            checksum=hashlib.sha256(text.encode("utf-8")).hexdigest(),
        )
        Path(args.manifest).write_text(json.dumps(asdict(manifest), indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
