"""
File formats: scenario JSON, trajectory CSV, series CSV, fit-report JSON.

All writers are byte-deterministic: fixed key order, 12 significant digits,
``\\n`` line endings.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .scenario import ElasticityPath, PhaseDownSchedule, Scenario, validate
from .scurve import ScurveError, ScurveFit, SeriesData
from .simulate import COLUMNS, TrajectoryTable

TRAJECTORY_HEADER = ",".join(COLUMNS)
SERIES_HEADER = ("year", "share")

SCENARIO_KEYS = (
    "label",
    "years",
    "alpha",
    "sigma_path",
    "demand_growth_rate",
    "fossil_schedule",
    "re_cost_decline",
    "fossil_unit_cost",
    "re_initial_cost",
    "y0",
    "init_mode",
)
SIGMA_PATH_KEYS = ("kind", "sigma_start", "sigma_end", "decay_rate")
SCHEDULE_KEYS = ("kind", "final_share_fraction")
# validate() prefixes nested-type violations with the type name
_VIOLATION_FIELDS = {"ElasticityPath": "sigma_path", "PhaseDownSchedule": "fossil_schedule"}


class FormatError(ValueError):
    """Malformed or invariant-violating input file.

    ``field`` names the offending key or row where one can be identified;
    ``line``/``column`` locate JSON syntax errors.
    """

    def __init__(self, message: str, *, path=None, field=None, line=None, column=None):
        self.path, self.field, self.line, self.column = path, field, line, column
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        prefix = ": ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


def fmt(x: float) -> str:
    return f"{x:.12g}"


# --- scenarios -------------------------------------------------------------


def scenario_to_dict(scenario: Scenario) -> dict:
    s = scenario
    return {
        "label": s.label,
        "years": s.years,
        "alpha": s.alpha,
        "sigma_path": {
            "kind": s.sigma_path.kind,
            "sigma_start": s.sigma_path.sigma_start,
            "sigma_end": s.sigma_path.sigma_end,
            "decay_rate": s.sigma_path.decay_rate,
        },
        "demand_growth_rate": s.demand_growth_rate,
        "fossil_schedule": {
            "kind": s.fossil_schedule.kind,
            "final_share_fraction": s.fossil_schedule.final_share_fraction,
        },
        "re_cost_decline": s.re_cost_decline,
        "fossil_unit_cost": s.fossil_unit_cost,
        "re_initial_cost": s.re_initial_cost,
        "y0": s.y0,
        "init_mode": s.init_mode,
    }


def _reject_unknown(obj: dict, allowed, where: str, path):
    if not isinstance(obj, dict):
        raise FormatError(f"{where} must be a JSON object", path=path, field=where)
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise FormatError(f"unknown key(s) in {where}: {', '.join(extra)}", path=path, field=extra[0])


def scenario_from_dict(data: dict, path=None) -> Scenario:
    """Build and validate a scenario; sigma values become rho via the path's properties."""
    _reject_unknown(data, SCENARIO_KEYS, "scenario", path)
    base = Scenario()
    kwargs = {k: data[k] for k in SCENARIO_KEYS if k in data and k not in ("sigma_path", "fossil_schedule")}

    if "sigma_path" in data:
        sp = data["sigma_path"]
        _reject_unknown(sp, SIGMA_PATH_KEYS, "sigma_path", path)
        kwargs["sigma_path"] = ElasticityPath(
            kind=sp.get("kind", base.sigma_path.kind),
            sigma_start=sp.get("sigma_start", base.sigma_path.sigma_start),
            sigma_end=sp.get("sigma_end"),
            decay_rate=sp.get("decay_rate", 0.0),
        )
    if "fossil_schedule" in data:
        fs = data["fossil_schedule"]
        _reject_unknown(fs, SCHEDULE_KEYS, "fossil_schedule", path)
        kwargs["fossil_schedule"] = PhaseDownSchedule(
            kind=fs.get("kind", base.fossil_schedule.kind),
            final_share_fraction=fs.get("final_share_fraction", base.fossil_schedule.final_share_fraction),
        )
    if "label" in kwargs and not isinstance(kwargs["label"], str):
        raise FormatError("label must be a string", path=path, field="label")
    scenario = Scenario(**kwargs)
    problems = validate(scenario)
    if problems:
        field = problems[0].split(":", 1)[0]
        field = _VIOLATION_FIELDS.get(field, field)
        raise FormatError("; ".join(problems), path=path, field=field)
    return scenario


def load_scenario(path) -> Scenario:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, path=path, line=exc.lineno, column=exc.colno) from exc
    return scenario_from_dict(data, path)


def write_scenario(scenario: Scenario, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n", encoding="utf-8")
    return path


# --- trajectories ----------------------------------------------------------


def trajectory_csv(table: TrajectoryTable, clamp_negative_tax: bool = False) -> str:
    lines = [TRAJECTORY_HEADER]
    for row in table.rows:
        values = []
        for name in COLUMNS:
            v = getattr(row, name)
            if name == "t":
                values.append(str(int(v)))
                continue
            if name == "carbon_tax" and clamp_negative_tax:
                v = max(v, 0.0)
            values.append(fmt(v))
        lines.append(",".join(values))
    return "\n".join(lines) + "\n"


def write_trajectory(table: TrajectoryTable, path, clamp_negative_tax: bool = False) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trajectory_csv(table, clamp_negative_tax))
    return path


def load_trajectory(path) -> dict[str, np.ndarray]:
    """Column arrays of a trajectory CSV."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline().rstrip("\n")
        if header != TRAJECTORY_HEADER:
            raise FormatError(f"expected header {TRAJECTORY_HEADER!r}, got {header!r}", path=path, line=1)
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return {name: data[:, i] for i, name in enumerate(COLUMNS)}


# --- share series ----------------------------------------------------------


def load_series(path, label: str | None = None) -> SeriesData:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty file", path=path, line=1) from None
        if tuple(h.strip() for h in header) != SERIES_HEADER:
            raise FormatError(f"expected header 'year,share', got {','.join(header)!r}", path=path, line=1)
        points = []
        seen = {}
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise FormatError(f"row has {len(row)} fields, expected 2", path=path, line=line)
            try:
                year, share = float(row[0]), float(row[1])
            except ValueError:
                raise FormatError(f"non-numeric row {row!r}", path=path, line=line) from None
            if not (math.isfinite(year) and math.isfinite(share)):
                raise FormatError(f"non-finite value in row {row!r}", path=path, line=line)
            if not 0.0 <= share <= 1.0:
                raise FormatError(f"share {share:g} for year {year:g} outside [0, 1]", path=path, field="share", line=line)
            if year in seen:
                raise FormatError(f"duplicate year {year:g} (first on line {seen[year]})", path=path, field="year", line=line)
            if points and year < points[-1][0]:
                raise FormatError(f"year {year:g} out of order; rows must be sorted by year", path=path, field="year", line=line)
            seen[year] = line
            points.append((year, share))
    try:
        return SeriesData(tuple(points), label or path.stem)
    except ScurveError as exc:
        raise FormatError(str(exc), path=path) from exc


def write_series(series: SeriesData, path) -> Path:
    path = Path(path)
    lines = ["year,share"] + [f"{fmt(y)},{fmt(s)}" for y, s in series.points]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


# --- fit reports -----------------------------------------------------------


def fit_to_dict(fit: ScurveFit) -> dict:
    m = fit.model
    return {
        "kind": m.kind,
        "parameters": m.named_params,
        "origin": m.origin,
        "rmse": fit.rmse,
        "r_squared": fit.r_squared,
        "iterations": fit.iterations,
        "converged": fit.converged,
    }


def write_fit_report(fits, path, series_label: str | None = None) -> Path:
    """
    Write one fit or several (ranked by rmse, stable on ties) as JSON.

    Floats are stored at 12 significant digits so reruns are byte-identical.
    """
    if isinstance(fits, ScurveFit):
        fits = [fits]
    ranked = sorted(fits, key=lambda f: f.rmse)
    doc = {"series": series_label, "fits": [_round_floats(fit_to_dict(f)) for f in ranked]}
    path = Path(path)
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return path


def _round_floats(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def write_json(obj, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_round_floats(obj), indent=2) + "\n", encoding="utf-8")
    return path


# --- sweep grids -----------------------------------------------------------

GRID_KEYS = (
    "alpha",
    "sigma",
    "demand_growth_rate",
    "re_cost_decline",
    "final_share_fraction",
    "fossil_unit_cost",
    "re_initial_cost",
    "y0",
    "years",
    "init_mode",
)


def load_grid(path) -> dict:
    """A JSON object mapping sweepable fields to non-empty lists of values."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, path=path, line=exc.lineno, column=exc.colno) from exc
    _reject_unknown(data, GRID_KEYS, "grid", path)
    for key, values in data.items():
        if not isinstance(values, list) or not values:
            raise FormatError(f"{key} must be a non-empty list", path=path, field=key)
    return data


def write_grid(grid: dict, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(grid, indent=2) + "\n", encoding="utf-8")
    return path
