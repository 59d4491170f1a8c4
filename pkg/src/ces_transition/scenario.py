"""Experiment description: horizon, initial mix, demand, phase-down, costs, elasticity path."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .ces import (
    CesParams,
    DomainError,
    FactorPoint,
    InfeasibleIsoquant,
    calibrate_initial,
    ces_output,
    invert_renewable,
    rho_to_sigma,
)

ELASTICITY_KINDS = ("constant", "linear-decay", "exponential-decay")
SCHEDULE_KINDS = ("linear", "exponential")
INIT_MODES = ("share-calibrated", "direct-share")


@dataclass(frozen=True)
class ElasticityPath:
    """
    Time path of the substitution parameter rho.

    Stored in sigma units (sigma = 1 / (1 + rho)) because that is how paths
    are specified on disk; ``rho_start`` / ``rho_end`` are derived. Decay
    kinds lower rho over time, i.e. make the factors easier to substitute.
    """

    kind: str = "constant"
    sigma_start: float = 1.5
    sigma_end: float | None = None
    decay_rate: float = 0.0

    def __post_init__(self):
        if self.sigma_end is None:
            object.__setattr__(self, "sigma_end", self.sigma_start)

    @classmethod
    def constant(cls, sigma: float) -> "ElasticityPath":
        return cls("constant", sigma, sigma)

    @classmethod
    def from_rho(cls, kind: str, rho_start: float, rho_end: float | None = None, decay_rate: float = 0.0):
        # rho < -1 maps to a negative sigma, which validate() reports
        sigma_end = None if rho_end is None else rho_to_sigma(rho_end)
        return cls(kind, rho_to_sigma(rho_start), sigma_end, decay_rate)

    @property
    def rho_start(self) -> float:
        return 1.0 / self.sigma_start - 1.0

    @property
    def rho_end(self) -> float:
        return 1.0 / self.sigma_end - 1.0


@dataclass(frozen=True)
class PhaseDownSchedule:
    kind: str = "linear"
    final_share_fraction: float = 0.52


@dataclass(frozen=True)
class Scenario:
    label: str = "default"
    years: int = 85
    alpha: float = 0.85
    sigma_path: ElasticityPath = field(default_factory=ElasticityPath)
    demand_growth_rate: float = 0.0
    fossil_schedule: PhaseDownSchedule = field(default_factory=PhaseDownSchedule)
    re_cost_decline: float = 0.0
    fossil_unit_cost: float = 1.0
    re_initial_cost: float = 1.0
    y0: float = 1.0
    init_mode: str = "share-calibrated"

    def with_overrides(self, **overrides) -> "Scenario":
        """Copy with top-level fields replaced; ``sigma`` sets a constant path."""
        overrides = dict(overrides)
        if "sigma" in overrides:
            overrides["sigma_path"] = ElasticityPath.constant(overrides.pop("sigma"))
        if "final_share_fraction" in overrides:
            overrides["fossil_schedule"] = replace(
                self.fossil_schedule, final_share_fraction=overrides.pop("final_share_fraction")
            )
        return replace(self, **overrides)


def rho_at(path: ElasticityPath, t: float, horizon: int) -> float:
    """rho in year ``t`` of a run lasting ``horizon`` years."""
    if path.kind == "constant":
        return path.rho_start
    if path.kind == "linear-decay":
        if t == horizon:
            return path.rho_end
        return path.rho_start + (path.rho_end - path.rho_start) * t / horizon
    if path.kind == "exponential-decay":
        return path.rho_end + (path.rho_start - path.rho_end) * math.exp(-path.decay_rate * t)
    raise DomainError(f"unknown elasticity path kind {path.kind!r}")


def fossil_at(schedule: PhaseDownSchedule, f0: float, t: float, horizon: int) -> float:
    """Exogenous fossil input in year ``t``; equals ``f0`` at t = 0."""
    frac = schedule.final_share_fraction
    if schedule.kind == "linear":
        value = f0 * (1.0 - (1.0 - frac) * t / horizon)
    elif schedule.kind == "exponential":
        value = f0 * frac ** (t / horizon)
    else:
        raise DomainError(f"unknown phase-down kind {schedule.kind!r}")
    if not value > 0:
        raise DomainError(f"phase-down produces non-positive fossil input {value} at t={t}")
    return value


def initial_point(scenario: Scenario):
    """
    Initial factor point and base-year output for ``scenario``.

    ``share-calibrated`` hits both the share alpha and output y0.
    ``direct-share`` sets F0 = alpha*y0, R0 = (1-alpha)*y0 and recomputes
    the output those quantities actually produce.
    """
    rho0 = rho_at(scenario.sigma_path, 0, scenario.years)
    if scenario.init_mode == "share-calibrated":
        return calibrate_initial(scenario.alpha, rho0, scenario.y0), scenario.y0
    if scenario.init_mode == "direct-share":
        point = FactorPoint(scenario.alpha * scenario.y0, (1.0 - scenario.alpha) * scenario.y0)
        return point, ces_output(CesParams(scenario.alpha, rho0), point)
    raise DomainError(f"unknown init_mode {scenario.init_mode!r}")


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def validate(scenario: Scenario) -> list[str]:
    """Return human-readable violations; an empty list means the scenario can run."""
    s = scenario
    out = []
    if not (isinstance(s.years, int) and not isinstance(s.years, bool) and s.years >= 1):
        out.append(f"years: horizon must be an integer >= 1, got {s.years!r}")
    if not (_finite(s.alpha) and 0.0 < s.alpha < 1.0):
        out.append(f"alpha: initial share must lie in (0, 1), got {s.alpha!r}")
    if not (_finite(s.demand_growth_rate) and s.demand_growth_rate >= 0.0):
        out.append(f"demand_growth_rate: must be >= 0, got {s.demand_growth_rate!r}")
    if not (_finite(s.re_cost_decline) and 0.0 <= s.re_cost_decline < 1.0):
        out.append(f"re_cost_decline: must lie in [0, 1), got {s.re_cost_decline!r}")
    for name in ("fossil_unit_cost", "re_initial_cost", "y0"):
        v = getattr(s, name)
        if not (_finite(v) and v > 0):
            out.append(f"{name}: must be positive, got {v!r}")
    if s.init_mode not in INIT_MODES:
        out.append(f"init_mode: must be one of {INIT_MODES}, got {s.init_mode!r}")
    out.extend(_path_violations(s.sigma_path))
    fs = s.fossil_schedule
    if fs.kind not in SCHEDULE_KINDS:
        out.append(f"PhaseDownSchedule: kind must be one of {SCHEDULE_KINDS}, got {fs.kind!r}")
    if not (_finite(fs.final_share_fraction) and 0.0 < fs.final_share_fraction < 1.0):
        out.append(
            "PhaseDownSchedule: final_share_fraction must lie in (0, 1) so fossil input "
            f"stays positive, got {fs.final_share_fraction!r}"
        )
    if out:
        return out
    # cross-field: the t=0 state must be constructible and on its own isoquant
    try:
        point, y_base = initial_point(s)
        invert_renewable(CesParams(s.alpha, rho_at(s.sigma_path, 0, s.years)), y_base, point.fossil)
    except (InfeasibleIsoquant, DomainError, OverflowError) as exc:
        out.append(f"initial state infeasible: {exc}")
    return out


def _path_violations(path: ElasticityPath) -> list[str]:
    if path.kind not in ELASTICITY_KINDS:
        return [f"ElasticityPath: kind must be one of {ELASTICITY_KINDS}, got {path.kind!r}"]
    sigmas = [path.sigma_start] if path.kind == "constant" else [path.sigma_start, path.sigma_end]
    for sig in sigmas:
        if not (_finite(sig) and sig > 0):
            return [f"ElasticityPath: every rho must exceed -1 (sigma finite and positive), got sigma={sig!r}"]
    if path.kind == "constant" and path.sigma_end != path.sigma_start:
        return ["ElasticityPath: constant path needs sigma_end equal to sigma_start"]
    if path.kind == "exponential-decay" and not (_finite(path.decay_rate) and path.decay_rate > 0):
        return [f"ElasticityPath: exponential decay_rate must be positive, got {path.decay_rate!r}"]
    if path.kind != "constant" and path.rho_end > path.rho_start:
        return ["ElasticityPath: decay kinds require rho_end <= rho_start (sigma_end >= sigma_start)"]
    return []
