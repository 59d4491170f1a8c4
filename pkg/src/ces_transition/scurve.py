"""
Diffusion S-curves and least-squares fitting of share series.

Families (parameter order as stored in ``ScurveModel.params``):

    logistic     (alpha, beta, t0)         1 / (1 + exp(-alpha (t - t0) - beta))
    logistic-ho  (alpha, beta, gamma, t0)  1 / (1 + exp(-alpha exp(-gamma (t - t0)) - beta))
    gompertz     (a, b)                    exp(-a exp(-b tau))
    bass         (p, q)                    (1 - e^{-(p+q) tau}) / (1 + (q/p) e^{-(p+q) tau})

``tau = t - origin`` for the two families without a location parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .optimize import nelder_mead

PARAM_NAMES = {
    "logistic": ("alpha", "beta", "t0"),
    "logistic-ho": ("alpha", "beta", "gamma", "t0"),
    "gompertz": ("a", "b"),
    "bass": ("p", "q"),
}
KINDS = tuple(PARAM_NAMES)

# parameters held at their start value during fitting; each is aliased with
# another one (beta with t0 in the logistic, alpha with t0 in logistic-ho)
PINNED = {"logistic": (1,), "logistic-ho": (3,), "gompertz": (), "bass": ()}

PENALTY = 1e12
MIN_POINTS = 4


class ScurveError(ValueError):
    pass


class InsufficientData(ScurveError):
    pass


class FitDegenerate(ScurveError):
    pass


@dataclass(frozen=True)
class SeriesData:
    points: tuple[tuple[float, float], ...]
    label: str = "series"

    def __post_init__(self):
        pts = tuple((float(y), float(s)) for y, s in self.points)
        object.__setattr__(self, "points", pts)
        for i, (year, share) in enumerate(pts):
            if not (math.isfinite(year) and math.isfinite(share)):
                raise ScurveError(f"point {i}: non-finite value ({year}, {share})")
            if not 0.0 <= share <= 1.0:
                raise ScurveError(f"point {i} (year {year:g}): share {share} outside [0, 1]")
            if i and year <= pts[i - 1][0]:
                raise ScurveError(f"point {i}: years must be strictly increasing ({pts[i - 1][0]:g} then {year:g})")

    @classmethod
    def from_arrays(cls, years, shares, label: str = "series") -> "SeriesData":
        return cls(tuple(zip(np.asarray(years, float).tolist(), np.asarray(shares, float).tolist())), label)

    @property
    def years(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def shares(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class ScurveModel:
    kind: str
    params: tuple[float, ...]
    origin: float = 0.0

    def __post_init__(self):
        if self.kind not in PARAM_NAMES:
            raise ScurveError(f"unknown model kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(self.params) != len(PARAM_NAMES[self.kind]):
            raise ScurveError(f"{self.kind} takes {len(PARAM_NAMES[self.kind])} parameters, got {len(self.params)}")

    @property
    def named_params(self) -> dict[str, float]:
        return dict(zip(PARAM_NAMES[self.kind], self.params))


@dataclass(frozen=True)
class ScurveFit:
    model: ScurveModel
    rmse: float
    r_squared: float
    iterations: int
    converged: bool


def params_valid(kind: str, params) -> bool:
    """Parameter-space constraints of each family."""
    p = params
    if not all(math.isfinite(v) for v in p):
        return False
    if kind == "logistic":
        return p[0] > 0
    if kind == "logistic-ho":
        # sign(alpha * gamma) < 0 rises, > 0 falls; either zero is a flat line
        return p[0] != 0 and p[2] != 0
    if kind == "gompertz":
        return p[0] > 0 and p[1] > 0
    if kind == "bass":
        return p[0] > 0 and p[1] >= 0
    raise ScurveError(f"unknown model kind {kind!r}")


def _curve(kind: str, params, t, origin: float):
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        if kind == "logistic":
            alpha, beta, t0 = params
            return expit(alpha * (t - t0) + beta)
        if kind == "logistic-ho":
            alpha, beta, gamma, t0 = params
            # alpha*exp(x) + beta as alpha*expm1(x) + (alpha + beta): near the
            # logistic corner alpha ~ -beta is huge and the plain form cancels
            return expit(alpha * np.expm1(-gamma * (t - t0)) + (alpha + beta))
        tau = t - origin
        if kind == "gompertz":
            a, b = params
            return np.exp(-a * np.exp(-b * tau))
        p, q = params
        decay = np.exp(-(p + q) * tau)
        return -np.expm1(-(p + q) * tau) / (1.0 + (q / p) * decay)


def evaluate(model: ScurveModel, t):
    """Model share at time(s) ``t``; scalar in, float out."""
    if not params_valid(model.kind, model.params):
        raise ScurveError(f"invalid {model.kind} parameters {model.named_params}")
    out = _curve(model.kind, model.params, t, model.origin)
    return float(out) if np.ndim(out) == 0 else out


def default_origin(kind: str, series: SeriesData) -> float:
    return float(series.points[0][0]) if kind in ("gompertz", "bass") else 0.0


def _half_crossing(years: np.ndarray, shares: np.ndarray) -> float:
    """Year where the series first crosses 0.5 (linear interpolation), else the midpoint year."""
    d = shares - 0.5
    for i in range(1, len(years)):
        if d[i] == 0.0:
            return float(years[i])
        if d[i - 1] * d[i] < 0:
            w = (0.5 - shares[i - 1]) / (shares[i] - shares[i - 1])
            return float(years[i - 1] + w * (years[i] - years[i - 1]))
    if d[0] == 0.0:
        return float(years[0])
    return float(0.5 * (years[0] + years[-1]))


def _max_slope(years: np.ndarray, shares: np.ndarray) -> float:
    slopes = np.diff(shares) / np.diff(years)
    return float(np.max(np.abs(slopes))) if slopes.size else 0.0


def default_start(kind: str, series: SeriesData) -> np.ndarray:
    """
    Heuristic starting parameters.

    logistic: t0 at the 0.5 crossing, alpha = 4 * max slope (the logistic's
    peak slope is alpha / 4), beta = 0. logistic-ho: the same curve mapped to
    the near-logistic corner gamma = -alpha/10 (see ``nest_logistic``).
    gompertz: peak slope b/e gives b; the 0.5 crossing at tau_c gives
    a = ln 2 * exp(b * tau_c). bass: q from peak adoption rate ~ q/4, p from
    the inflection time ln(q/p) / (p + q) matched to the 0.5 crossing.
    """
    years, shares = series.years, series.shares
    tc = _half_crossing(years, shares)
    slope = max(_max_slope(years, shares), 1e-6)
    if kind == "logistic":
        return np.array([4.0 * slope, 0.0, tc])
    if kind == "logistic-ho":
        return np.array(nest_logistic(ScurveModel("logistic", (4.0 * slope, 0.0, tc))).params)
    tau_c = tc - years[0]
    if kind == "gompertz":
        b = math.e * slope
        return np.array([math.log(2.0) * math.exp(min(b * tau_c, 700.0)), b])
    if kind == "bass":
        q = max(4.0 * slope, 1e-3)
        p = q * math.exp(-q * tau_c)
        for _ in range(20):
            p = q * math.exp(-(p + q) * tau_c)
        return np.array([max(p, 1e-6), q])
    raise ScurveError(f"unknown model kind {kind!r}")


def nest_logistic(model: ScurveModel, gamma_fraction: float = 0.1, tail: str = "upper") -> ScurveModel:
    """
    logistic-ho parameters that approximate a logistic near its centre.

    With g = gamma_fraction * a, ``tail="upper"`` uses gamma = -g and
    alpha = -beta = a/g, so the exponent (a/g)(exp(g s) - 1) = a s + O(g s^2)
    and the double-exponential tail sits near share 1. ``tail="lower"``
    mirrors it (gamma = g, alpha = -beta = -a/g), putting the Gompertz-like
    tail near 0. The two families only coincide in the limit g -> 0.
    """
    if model.kind != "logistic":
        raise ScurveError("nest_logistic expects a logistic model")
    a, b, t0 = model.params
    centre = t0 - b / a
    g = gamma_fraction * a
    if tail == "upper":
        return ScurveModel("logistic-ho", (a / g, -a / g, -g, centre))
    if tail == "lower":
        return ScurveModel("logistic-ho", (-a / g, a / g, g, centre))
    raise ScurveError(f"tail must be 'upper' or 'lower', got {tail!r}")


def _mse(kind, params, t, y, origin) -> float:
    if not params_valid(kind, params):
        return PENALTY
    r = _curve(kind, params, t, origin) - y
    v = float(np.mean(r * r))
    return v if math.isfinite(v) else PENALTY


def _check_fittable(kind: str, series: SeriesData):
    if kind not in PARAM_NAMES:
        raise ScurveError(f"unknown model kind {kind!r}; expected one of {KINDS}")
    n = len(series)
    if n < MIN_POINTS:
        raise InsufficientData(f"need at least {MIN_POINTS} points to fit, got {n}")
    if len(PARAM_NAMES[kind]) > n - 1:
        raise InsufficientData(f"{kind} has {len(PARAM_NAMES[kind])} parameters; {n} points is too few")
    shares = series.shares
    if np.all(shares == shares[0]):
        raise FitDegenerate("series is constant; r_squared undefined")


def fit(
    kind: str,
    series: SeriesData,
    start=None,
    *,
    n_starts: int = 5,
    seed: int = 0,
    max_iter: int = 4_000,
) -> ScurveFit:
    """
    Least-squares fit of one family to ``series``.

    Minimises the unweighted mean squared share residual with Nelder-Mead
    from ``start`` (or ``default_start``) plus ``n_starts - 1`` jittered
    copies; the best result wins, earlier starts on ties. Invalid parameter
    regions score ``PENALTY`` instead of being constrained.

    Raises
    ------
    InsufficientData
        Fewer than four points, or more parameters than points - 1.
    FitDegenerate
        Constant series.
    """
    _check_fittable(kind, series)
    t, y = series.years, series.shares
    origin = default_origin(kind, series)
    full0 = np.asarray(default_start(kind, series) if start is None else start, dtype=float)
    if full0.shape != (len(PARAM_NAMES[kind]),):
        raise ScurveError(f"{kind} start needs {len(PARAM_NAMES[kind])} values, got {full0.shape}")
    free = [i for i in range(full0.size) if i not in PINNED[kind]]
    span = float(t[-1] - t[0])

    def unpack(z):
        full = full0.copy()
        full[free] = z
        return full

    def objective(z):
        return _mse(kind, unpack(z), t, y, origin)

    names = PARAM_NAMES[kind]
    floors = np.array([span / 20.0 if names[i] == "t0" else 1e-3 for i in free])

    rng = np.random.default_rng(seed)
    z0 = full0[free]
    starts = [z0]
    if kind == "logistic-ho" and start is None:
        lower = nest_logistic(ScurveModel("logistic", default_start("logistic", series)), tail="lower")
        starts.append(np.asarray(lower.params)[free])
    for _ in range(max(n_starts, 1) - 1):
        u = rng.uniform(-1.0, 1.0, size=z0.size)
        jitter = np.where([names[i] == "t0" for i in free], 0.1 * span * u, 0.2 * np.abs(z0) * u)
        starts.append(z0 + jitter)

    best = None
    for s in starts:
        if objective(s) >= PENALTY:
            continue
        res = _polish(objective, s, floors, max_iter)
        if best is None or res.fun < best.fun:
            best = res
    if best is None:
        raise ScurveError(f"no valid start for {kind}; supply one explicitly")

    params = unpack(best.x)
    resid = _curve(kind, params, t, origin) - y
    ss_res = float(np.sum(resid * resid))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return ScurveFit(
        model=ScurveModel(kind, tuple(params.tolist()), origin),
        rmse=math.sqrt(ss_res / len(y)),
        r_squared=1.0 - ss_res / ss_tot,
        iterations=best.iterations,
        converged=best.converged,
    )


def _polish(objective, z, floors, max_iter, restarts: int = 6):
    """Nelder-Mead in per-parameter scaled coordinates, restarted from its own optimum."""
    total = 0
    res = None
    f_start = objective(z)
    tol_f = 1e-14 * f_start
    for k in range(restarts + 1):
        origin = z if res is None else res.x
        scale = np.maximum((0.1 if res is None else 0.01) * np.abs(origin), floors)

        def scaled(u, origin=origin, scale=scale):
            return objective(origin + u * scale)

        nxt = nelder_mead(scaled, np.zeros_like(origin), step=1.0, tol_x=1e-10, tol_f=tol_f, max_iter=max_iter)
        total += nxt.iterations
        nxt = nxt._replace(x=origin + nxt.x * scale)
        if res is not None and not nxt.fun < res.fun:
            res = res._replace(converged=res.converged or nxt.converged)
            break
        res = nxt
    return res._replace(iterations=total)


def rmse_of(model: ScurveModel, series: SeriesData) -> float:
    r = np.asarray(evaluate(model, series.years)) - series.shares
    return math.sqrt(float(np.mean(r * r)))
