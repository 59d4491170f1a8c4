"""
Year-by-year carbon-tax simulation under an exogenous fossil phase-down.

Each year: fix rho(t), output Y(t) and fossil input F(t); solve the isoquant
for the renewable input R(t); price fossil energy from the first-order
condition relative to the (declining) renewable cost; the carbon tax is the
gap between that price and the constant fossil unit cost.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .ces import CesParams, FactorPoint, InfeasibleIsoquant, invert_renewable, relative_price
from .scenario import Scenario, fossil_at, initial_point, rho_at, validate


class ScenarioInvalid(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid scenario: " + "; ".join(self.violations))


class SimulationInfeasible(InfeasibleIsoquant):
    """The isoquant became unreachable in year ``year``; ``rows`` holds the years before it."""

    def __init__(self, cause: InfeasibleIsoquant, year: int, rows: list):
        self.year = year
        self.rows = list(rows)
        super().__init__(cause.fossil, cause.target_output, cause.rho, f"year {year}: {cause}")


@dataclass(frozen=True)
class TrajectoryRow:
    t: int
    rho: float
    F: float
    R: float
    Y: float
    share_F: float
    p_R: float
    p_F: float
    carbon_tax: float
    re_multiple: float


COLUMNS = tuple(f.name for f in fields(TrajectoryRow))


@dataclass(frozen=True)
class TrajectoryTable:
    scenario: Scenario
    rows: tuple[TrajectoryRow, ...]

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        if name not in COLUMNS:
            raise KeyError(name)
        return np.array([getattr(r, name) for r in self.rows], dtype=float)

    def as_array(self) -> np.ndarray:
        return np.array([astuple(r) for r in self.rows], dtype=float)

    @property
    def final(self) -> TrajectoryRow:
        return self.rows[-1]


def simulate(scenario: Scenario) -> TrajectoryTable:
    """
    Run ``scenario`` for t = 0..years.

    Raises
    ------
    ScenarioInvalid
        If ``validate(scenario)`` reports anything.
    SimulationInfeasible
        If some year's isoquant cannot be reached; carries the partial rows.
    """
    problems = validate(scenario)
    if problems:
        raise ScenarioInvalid(problems)
    s = scenario
    T = s.years
    point0, y_base = initial_point(s)
    rows = []
    R0 = None
    for t in range(T + 1):
        rho = rho_at(s.sigma_path, t, T)
        params = CesParams(s.alpha, rho)
        Y = y_base * (1.0 + s.demand_growth_rate) ** t
        F = fossil_at(s.fossil_schedule, point0.fossil, t, T)
        try:
            R = invert_renewable(params, Y, F)
        except InfeasibleIsoquant as exc:
            raise SimulationInfeasible(exc, t, rows) from exc
        if R0 is None:
            R0 = R
        p_R = s.re_initial_cost * (1.0 - s.re_cost_decline) ** t
        p_F = p_R * relative_price(params, FactorPoint(F, R))
        rows.append(
            TrajectoryRow(
                t=t,
                rho=rho,
                F=F,
                R=R,
                Y=Y,
                share_F=F / (F + R),
                p_R=p_R,
                p_F=p_F,
                carbon_tax=p_F - s.fossil_unit_cost,
                re_multiple=R / R0,
            )
        )
    return TrajectoryTable(scenario, tuple(rows))


def tax_peak(table: TrajectoryTable) -> tuple[int, float] | None:
    """Year and value of the highest carbon tax; ties go to the earliest year."""
    if not table.rows:
        return None
    tax = table.column("carbon_tax")
    i = int(np.argmax(tax))
    return table.rows[i].t, float(tax[i])


@dataclass(frozen=True)
class SweepPoint:
    overrides: dict
    scenario: Scenario | None
    table: TrajectoryTable | None = None
    error: str | None = None
    error_kind: str | None = None  # "invalid" | "infeasible"

    @property
    def ok(self) -> bool:
        return self.table is not None


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]

    @property
    def tables(self) -> list[TrajectoryTable]:
        return [p.table for p in self.points if p.ok]

    @property
    def failures(self) -> list[SweepPoint]:
        return [p for p in self.points if not p.ok]

    def __len__(self):
        return len(self.points)


def grid_points(grid: dict) -> list[dict]:
    """Cartesian product of ``grid``, fields in sorted name order, values in given order."""
    keys = sorted(grid)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(grid[k] for k in keys))]


def _run_point(base: Scenario, overrides: dict) -> SweepPoint:
    try:
        scenario = base.with_overrides(**overrides)
    except (TypeError, ValueError) as exc:
        return SweepPoint(overrides, None, error=str(exc), error_kind="invalid")
    try:
        return SweepPoint(overrides, scenario, table=simulate(scenario))
    except ScenarioInvalid as exc:
        return SweepPoint(overrides, scenario, error=str(exc), error_kind="invalid")
    except InfeasibleIsoquant as exc:
        return SweepPoint(overrides, scenario, error=str(exc), error_kind="infeasible")


def simulate_sweep(base: Scenario, grid: dict, jobs: int = 1) -> SweepResult:
    """
    Simulate every point of ``grid`` applied on top of ``base``.

    Failing points are kept in the result with their error instead of
    aborting the sweep. Output order depends only on ``grid``, not on ``jobs``.
    """
    combos = grid_points(grid)
    if jobs <= 1 or len(combos) <= 1:
        points = [_run_point(base, c) for c in combos]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_run_point, itertools.repeat(base), combos))
    return SweepResult(tuple(points))
