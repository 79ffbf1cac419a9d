"""Command-line front end: JSON run configurations in, CSV/JSON records out.

Commands: free-energy, pressure, entropy, sweep, compare-asymptotics,
nernst-check.  Each reads one JSON config describing the material, the
separation/temperature grids and optional engine overrides, and writes
one record per grid point with convergence diagnostics.  Exit codes:
0 success, 2 config error, 3 cap-hit convergence failure in strict mode.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import asymptotics as asym
from .lifshitz import (
    DEFAULT_SETTINGS,
    EngineSettings,
    free_energy,
    pressure,
    zero_point_energy,
    zero_temperature_pressure,
)
from .materials import DcConductivity, MaterialModel, dimensionless_state, kappa_for
from .thermodynamics import (
    DEFAULT_DIFF,
    DiffSettings,
    entropy,
    limit_at_zero_temperature,
    nernst_limit_dc,
)
from .units import (
    C_LIGHT,
    HBAR,
    K_BOLTZMANN,
    si_conductivity_to_gaussian,
    tau_from,
)

__all__ = ["RunConfig", "ComparisonRecord", "ConfigError", "load_config", "run", "fit_leading_coefficient", "main"]

COLUMNS = (
    "a_m",
    "T_K",
    "tau",
    "quantity",
    "value_SI",
    "value_dimensionless",
    "asymptotic_SI",
    "rel_residual",
    "l_used",
    "hit_cap",
)

COMMANDS = (
    "free-energy",
    "pressure",
    "entropy",
    "sweep",
    "compare-asymptotics",
    "nernst-check",
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STRICT = 3

_QUANTITIES = ("free_energy", "pressure", "entropy")


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass(frozen=True)
class ComparisonRecord:
    """One numeric-vs-asymptotic sample of a sweep."""

    tau: float
    numeric_value: float
    asymptotic_value: float
    abs_residual: float
    rel_residual: float
    fitted_leading_coefficient: float | None = None
    target_coefficient: float | None = None


@dataclass(frozen=True)
class RunConfig:
    command: str
    material: MaterialModel
    a_grid: tuple[float, ...]
    T_grid: tuple[float, ...]
    engine: EngineSettings
    diff: DiffSettings
    output_path: str | None = None
    output_format: str = "csv"
    strict: bool = False
    quantities: tuple[str, ...] = _QUANTITIES
    compare_quantity: str = "entropy"
    nernst_tolerance: float = 0.01
    sigma_unit: str = "gaussian"
    sigma_ref_input: float | None = None

    def to_json_dict(self) -> dict:
        """Serialize to a dict that re-parses to an identical run."""
        mat: dict = {"eps0": self.material.eps0, "mu0": self.material.mu0}
        if self.material.omega_m is not None:
            mat["omega_m"] = self.material.omega_m
        if self.material.dc is not None:
            sigma = self.sigma_ref_input
            if sigma is None:
                sigma = self.material.dc.sigma_ref
            mat["dc"] = {
                "sigma_ref": sigma,
                "b": self.material.dc.b,
                "sigma_unit": self.sigma_unit,
            }
        return {
            "command": self.command,
            "material": mat,
            "geometry": {"a_grid": list(self.a_grid)},
            "temperature": {"T_grid": list(self.T_grid)},
            "engine": {
                "quad_rel_tol": self.engine.quad_rel_tol,
                "panel_width": self.engine.panel_width,
                "y_cutoff_offset": self.engine.y_cutoff_offset,
                "matsubara_rel_tol": self.engine.matsubara_rel_tol,
                "matsubara_consecutive": self.engine.matsubara_consecutive,
                "l_max_cap": self.engine.l_max_cap,
            },
            "diff": {
                "rel_step": self.diff.rel_step,
                "richardson_levels": self.diff.richardson_levels,
                "min_abs_step": self.diff.min_abs_step,
            },
            "output": {"path": self.output_path, "format": self.output_format},
            "strict": self.strict,
            "sweep": {"quantities": list(self.quantities)},
            "compare": {"quantity": self.compare_quantity},
            "nernst": {"tolerance": self.nernst_tolerance},
        }


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def _as_number(value, name: str) -> float:
    _expect(isinstance(value, (int, float)) and not isinstance(value, bool), f"{name} must be a number")
    out = float(value)
    _expect(math.isfinite(out), f"{name} must be finite")
    return out


def _parse_grid(section, name: str) -> tuple[float, ...]:
    _expect(isinstance(section, dict), f"'{name}' must be an object")
    scalar_key = "a" if name == "geometry" else "T"
    grid_key = scalar_key + "_grid"
    if scalar_key in section:
        _expect(grid_key not in section, f"give either '{scalar_key}' or '{grid_key}', not both")
        return (_as_number(section[scalar_key], scalar_key),)
    _expect(grid_key in section, f"'{name}' needs '{scalar_key}' or '{grid_key}'")
    raw = section[grid_key]
    _expect(isinstance(raw, list) and len(raw) >= 1, f"'{grid_key}' must be a non-empty list")
    grid = tuple(_as_number(v, grid_key) for v in raw)
    _expect(all(v > 0.0 for v in grid), f"'{grid_key}' values must be positive")
    if len(grid) > 1:
        diffs = [grid[i + 1] - grid[i] for i in range(len(grid) - 1)]
        _expect(
            all(d > 0 for d in diffs) or all(d < 0 for d in diffs),
            f"'{grid_key}' must be strictly monotone",
        )
    return grid


def _parse_material(section) -> tuple[MaterialModel, str, float | None]:
    _expect(isinstance(section, dict), "'material' must be an object")
    known = {"eps0", "mu0", "omega_m", "dc"}
    _expect(set(section) <= known, f"unknown material keys: {sorted(set(section) - known)}")
    eps0 = _as_number(section.get("eps0", 1.0), "eps0")
    mu0 = _as_number(section.get("mu0", 1.0), "mu0")
    _expect(eps0 >= 1.0, "eps0 must be >= 1")
    _expect(mu0 >= 1.0, "mu0 must be >= 1")
    omega_m = None
    if section.get("omega_m") is not None:
        omega_m = _as_number(section["omega_m"], "omega_m")
        _expect(omega_m > 0.0, "omega_m must be positive")
    dc = None
    sigma_unit = "gaussian"
    sigma_input = None
    if section.get("dc") is not None:
        dc_raw = section["dc"]
        _expect(isinstance(dc_raw, dict), "'dc' must be an object")
        sigma_input = _as_number(dc_raw.get("sigma_ref"), "dc.sigma_ref")
        b = _as_number(dc_raw.get("b"), "dc.b")
        _expect(sigma_input >= 0.0, "dc.sigma_ref must be non-negative")
        _expect(b > 0.0, "dc.b must be positive")
        sigma_unit = dc_raw.get("sigma_unit", "gaussian")
        _expect(sigma_unit in ("gaussian", "si"), "dc.sigma_unit must be 'gaussian' or 'si'")
        sigma_ref = sigma_input if sigma_unit == "gaussian" else si_conductivity_to_gaussian(sigma_input)
        dc = DcConductivity(sigma_ref=sigma_ref, b=b)
    try:
        model = MaterialModel(eps0=eps0, mu0=mu0, omega_m=omega_m, dc=dc)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return model, sigma_unit, sigma_input


def _parse_engine(section) -> EngineSettings:
    if section is None:
        return DEFAULT_SETTINGS
    _expect(isinstance(section, dict), "'engine' must be an object")
    defaults = DEFAULT_SETTINGS
    known = {
        "quad_rel_tol",
        "panel_width",
        "y_cutoff_offset",
        "matsubara_rel_tol",
        "matsubara_consecutive",
        "l_max_cap",
    }
    _expect(set(section) <= known, f"unknown engine keys: {sorted(set(section) - known)}")
    try:
        return EngineSettings(
            quad_rel_tol=float(section.get("quad_rel_tol", defaults.quad_rel_tol)),
            panel_width=float(section.get("panel_width", defaults.panel_width)),
            y_cutoff_offset=float(section.get("y_cutoff_offset", defaults.y_cutoff_offset)),
            matsubara_rel_tol=float(section.get("matsubara_rel_tol", defaults.matsubara_rel_tol)),
            matsubara_consecutive=int(section.get("matsubara_consecutive", defaults.matsubara_consecutive)),
            l_max_cap=(None if section.get("l_max_cap") is None else int(section["l_max_cap"])),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid engine settings: {exc}") from exc


def _parse_diff(section) -> DiffSettings:
    if section is None:
        return DEFAULT_DIFF
    _expect(isinstance(section, dict), "'diff' must be an object")
    known = {"rel_step", "richardson_levels", "min_abs_step"}
    _expect(set(section) <= known, f"unknown diff keys: {sorted(set(section) - known)}")
    try:
        return DiffSettings(
            rel_step=float(section.get("rel_step", DEFAULT_DIFF.rel_step)),
            richardson_levels=int(section.get("richardson_levels", DEFAULT_DIFF.richardson_levels)),
            min_abs_step=float(section.get("min_abs_step", DEFAULT_DIFF.min_abs_step)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid diff settings: {exc}") from exc


def parse_config(data: dict, command: str) -> RunConfig:
    _expect(isinstance(data, dict), "config root must be a JSON object")
    _expect(command in COMMANDS, f"unknown command {command!r}")
    if "command" in data:
        _expect(
            data["command"] == command,
            f"config command {data['command']!r} does not match invoked command {command!r}",
        )
    _expect("material" in data, "config needs a 'material' section")
    _expect("geometry" in data, "config needs a 'geometry' section")
    _expect("temperature" in data, "config needs a 'temperature' section")
    model, sigma_unit, sigma_input = _parse_material(data["material"])
    a_grid = _parse_grid(data["geometry"], "geometry")
    T_grid = _parse_grid(data["temperature"], "temperature")
    engine = _parse_engine(data.get("engine"))
    diff = _parse_diff(data.get("diff"))

    output = data.get("output") or {}
    _expect(isinstance(output, dict), "'output' must be an object")
    output_format = output.get("format", "csv")
    _expect(output_format in ("csv", "json"), "output format must be 'csv' or 'json'")

    sweep = data.get("sweep") or {}
    quantities = tuple(sweep.get("quantities", _QUANTITIES))
    _expect(
        len(quantities) >= 1 and all(q in _QUANTITIES for q in quantities),
        f"sweep quantities must be among {_QUANTITIES}",
    )

    compare = data.get("compare") or {}
    compare_quantity = compare.get("quantity", "entropy")
    _expect(compare_quantity in _QUANTITIES, f"compare quantity must be among {_QUANTITIES}")

    nernst = data.get("nernst") or {}
    nernst_tol = _as_number(nernst.get("tolerance", 0.01), "nernst.tolerance")
    _expect(nernst_tol > 0.0, "nernst.tolerance must be positive")

    if command == "nernst-check":
        _expect(model.dc is not None, "nernst-check needs a material with a dc term")
        _expect(len(T_grid) >= 3, "nernst-check needs a temperature grid of >= 3 points")

    return RunConfig(
        command=command,
        material=model,
        a_grid=a_grid,
        T_grid=T_grid,
        engine=engine,
        diff=diff,
        output_path=output.get("path"),
        output_format=output_format,
        strict=bool(data.get("strict", False)),
        quantities=quantities,
        compare_quantity=compare_quantity,
        nernst_tolerance=nernst_tol,
        sigma_unit=sigma_unit,
        sigma_ref_input=sigma_input,
    )


def load_config(path: str, command: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(data, command)


# ---------------------------------------------------------------------------
# Records and output.

_F_NORM = lambda a: HBAR * C_LIGHT / (32.0 * math.pi**2 * a**3)  # noqa: E731
_P_NORM = lambda a: HBAR * C_LIGHT / (32.0 * math.pi**2 * a**4)  # noqa: E731
_S_NORM = lambda a: K_BOLTZMANN / (16.0 * math.pi * a * a)  # noqa: E731


def _row(a, T, quantity, value, dimensionless, asym_si=None, rel_res=None, l_used=None, hit_cap=None):
    return {
        "a_m": a,
        "T_K": T,
        "tau": tau_from(a, T),
        "quantity": quantity,
        "value_SI": value,
        "value_dimensionless": dimensionless,
        "asymptotic_SI": asym_si,
        "rel_residual": rel_res,
        "l_used": l_used,
        "hit_cap": hit_cap,
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_rows(config: RunConfig, rows: list[dict], summary: dict | None) -> None:
    if config.output_format == "json":
        payload = {"config": config.to_json_dict(), "records": rows, "summary": summary}
        text = json.dumps(payload, indent=2, sort_keys=True)
        if config.output_path:
            with open(config.output_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")
        return
    lines = [",".join(COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in COLUMNS))
    text = "\n".join(lines) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Command implementations.


def _points(config: RunConfig):
    for a in config.a_grid:
        for T in config.T_grid:
            yield a, T


def _quantity_rows(config: RunConfig, quantity: str) -> tuple[list[dict], bool]:
    rows = []
    any_cap = False
    model = config.material
    for a, T in _points(config):
        if quantity == "free_energy":
            state = dimensionless_state(model, a, T)
            value, rep = free_energy(model, state, config.engine)
            rows.append(_row(a, T, quantity, value, value / _F_NORM(a), None, None, rep.l_used, rep.hit_cap))
            any_cap |= rep.hit_cap
        elif quantity == "pressure":
            state = dimensionless_state(model, a, T)
            value, rep = pressure(model, state, config.engine)
            rows.append(_row(a, T, quantity, value, value / _P_NORM(a), None, None, rep.l_used, rep.hit_cap))
            any_cap |= rep.hit_cap
        else:
            result = entropy(model, a, T, config.engine, config.diff)
            rows.append(
                _row(a, T, quantity, result.value, result.value / _S_NORM(a), None, None, result.l_used, result.hit_cap)
            )
            any_cap |= result.hit_cap
    return rows, any_cap


def fit_leading_coefficient(records: Sequence[tuple[float, float]], power: int) -> tuple[float, float]:
    """Least-squares leading coefficient of values sampled on a shrinking T grid.

    Fits value = c T^power + d T^(power+1); the correction column absorbs
    the next order of the underlying expansion, which otherwise biases the
    leading coefficient beyond the acceptance tolerances on practical
    grids.  Returns (c, rms residual of the fit).
    """
    if len(records) < 4:
        raise ValueError("need at least 4 samples to fit a leading coefficient")
    ts = np.array([r[0] for r in records], dtype=float)
    vs = np.array([r[1] for r in records], dtype=float)
    if len(set(ts.tolist())) != len(ts) or np.any(ts <= 0.0):
        raise ValueError("temperature samples must be positive and distinct")
    design = np.vstack([ts**power, ts ** (power + 1)]).T
    coef, *_ = np.linalg.lstsq(design, vs, rcond=None)
    resid = vs - design @ coef
    return float(coef[0]), float(math.sqrt(np.mean(resid * resid)))


def _compare_targets(config: RunConfig, a: float):
    model = config.material
    kappa = kappa_for(model, a)
    debye = model.has_debye_mu
    quantity = config.compare_quantity
    if quantity == "entropy":
        power = 1 if debye else 2
        target = (
            asym.entropy_t1_coefficient_debye(model.mu0, model.omega_m, a)
            if debye
            else asym.entropy_t2_coefficient(model.eps0, model.mu0)
        )
    elif quantity == "free_energy":
        power = 2 if debye else 3
        target = None
    else:
        power = 2 if debye else 4
        target = None
    return quantity, power, target, kappa, debye


def _asymptotic_value(config: RunConfig, a: float, T: float, kappa: float, debye: bool) -> float:
    model = config.material
    inp = asym.AsymptoticInput(
        eps0=model.eps0, mu0=model.mu0, tau=tau_from(a, T), a=a, kappa_m=kappa if debye else 0.0
    )
    q = config.compare_quantity
    if q == "entropy":
        return asym.entropy_debye(inp) if debye else asym.entropy_leading(inp)
    if q == "free_energy":
        return asym.delta_f_debye(inp) if debye else asym.delta_f_nlo(inp)
    return asym.delta_p_debye(inp) if debye else asym.delta_p_leading(inp)


def _run_compare(config: RunConfig) -> tuple[list[dict], dict | None, bool]:
    model = config.material
    rows: list[dict] = []
    any_cap = False
    summary: dict | None = None
    for a in config.a_grid:
        quantity, power, target, kappa, debye = _compare_targets(config, a)
        needs_zero_t = quantity in ("free_energy", "pressure")
        if needs_zero_t and model.dc is not None:
            raise ConfigError("compare-asymptotics of free_energy/pressure needs a carrier-free material")
        e0 = zero_point_energy(model, a, config.engine) if quantity == "free_energy" else None
        p0 = zero_temperature_pressure(model, a, config.engine) if quantity == "pressure" else None
        samples = []
        for T in config.T_grid:
            if quantity == "entropy":
                result = entropy(model, a, T, config.engine, config.diff)
                numeric, l_used, cap = result.value, result.l_used, result.hit_cap
                norm = _S_NORM(a)
            elif quantity == "free_energy":
                state = dimensionless_state(model, a, T)
                f, rep = free_energy(model, state, config.engine)
                numeric, l_used, cap = f - e0, rep.l_used, rep.hit_cap
                norm = _F_NORM(a)
            else:
                state = dimensionless_state(model, a, T)
                p, rep = pressure(model, state, config.engine)
                numeric, l_used, cap = p - p0, rep.l_used, rep.hit_cap
                norm = _P_NORM(a)
            any_cap |= cap
            reference = _asymptotic_value(config, a, T, kappa, debye)
            rel = abs(numeric - reference) / abs(reference) if reference != 0.0 else 0.0
            samples.append((T, numeric))
            rows.append(_row(a, T, quantity, numeric, numeric / norm, reference, rel, l_used, cap))
        if len(samples) >= 4:
            fitted, resid = fit_leading_coefficient(samples, power)
            summary = {
                "quantity": quantity,
                "fit_power": power,
                "fitted_leading_coefficient": fitted,
                "target_coefficient": target,
                "fit_rms_residual": resid,
            }
            if target:
                summary["coefficient_rel_error"] = abs(fitted - target) / abs(target)
    return rows, summary, any_cap


def _run_nernst(config: RunConfig) -> tuple[list[dict], dict, bool]:
    model = config.material
    rows: list[dict] = []
    any_cap = False
    a = config.a_grid[0]
    if len(config.a_grid) > 1:
        raise ConfigError("nernst-check expects a single separation")
    samples = []
    for T in config.T_grid:
        result = entropy(model, a, T, config.engine, config.diff)
        any_cap |= result.hit_cap
        samples.append((T, result.value))
        rows.append(
            _row(a, T, "entropy", result.value, result.value / _S_NORM(a), None, None, result.l_used, result.hit_cap)
        )
    limit = nernst_limit_dc(a, model.eps0)
    extrapolated, extrap_err = limit_at_zero_temperature(
        [s[0] for s in samples], [s[1] for s in samples], leading_power=2
    )
    rel = abs(extrapolated - limit) / abs(limit)
    passed = rel <= config.nernst_tolerance
    rows.append(
        _row(a, min(config.T_grid), "entropy_extrapolated", extrapolated, extrapolated / _S_NORM(a), limit, rel, None, None)
    )
    summary = {
        "nernst_limit_SI": limit,
        "extrapolated_entropy_SI": extrapolated,
        "extrapolation_error_estimate": extrap_err,
        "rel_residual": rel,
        "tolerance": config.nernst_tolerance,
        "pass": passed,
    }
    return rows, summary, any_cap


def run(config: RunConfig) -> int:
    """Execute a parsed configuration; returns the process exit code."""
    summary: dict | None = None
    if config.command in ("free-energy", "pressure", "entropy"):
        quantity = {"free-energy": "free_energy", "pressure": "pressure", "entropy": "entropy"}[config.command]
        rows, any_cap = _quantity_rows(config, quantity)
    elif config.command == "sweep":
        rows = []
        any_cap = False
        for quantity in config.quantities:
            qrows, cap = _quantity_rows(config, quantity)
            rows.extend(qrows)
            any_cap |= cap
    elif config.command == "compare-asymptotics":
        rows, summary, any_cap = _run_compare(config)
    elif config.command == "nernst-check":
        rows, summary, any_cap = _run_nernst(config)
    else:  # pragma: no cover - guarded by parse_config
        raise ConfigError(f"unknown command {config.command!r}")

    _write_rows(config, rows, summary)
    if summary is not None and config.output_format == "csv":
        for key, value in summary.items():
            print(f"{key}: {value}")
    if config.command == "nernst-check" and summary is not None:
        print(f"nernst-check: {'PASS' if summary['pass'] else 'FAIL'}")
    if any_cap:
        print("warning: Matsubara cap reached before the truncation criterion", file=sys.stderr)
        if config.strict:
            return EXIT_STRICT
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="magnetocasimir",
        description="Casimir free energy, pressure and entropy for magnetodielectric parallel plates",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="path to the JSON run configuration")
        cmd.add_argument("--output", default=None, help="output file path (default: stdout)")
        cmd.add_argument("--format", default=None, choices=("csv", "json"), help="output format override")
        cmd.add_argument("--strict", action="store_true", help="fail (exit 3) when the Matsubara cap is hit")
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config, args.command)
        if args.output is not None:
            config = RunConfig(**{**config.__dict__, "output_path": args.output})
        if args.format is not None:
            config = RunConfig(**{**config.__dict__, "output_format": args.format})
        if args.strict:
            config = RunConfig(**{**config.__dict__, "strict": True})
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
