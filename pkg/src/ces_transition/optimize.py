"""Derivative-free Nelder-Mead simplex minimiser."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np


class NonFiniteObjective(ValueError):
    pass


class NelderMeadResult(NamedTuple):
    x: np.ndarray
    fun: float
    iterations: int
    converged: bool


def nelder_mead(
    objective: Callable[[np.ndarray], float],
    start,
    *,
    step=None,
    tol_x: float = 1e-10,
    tol_f: float = 1e-16,
    max_iter: int = 10_000,
    reflect: float = 1.0,
    expand: float = 2.0,
    contract: float = 0.5,
    shrink: float = 0.5,
) -> NelderMeadResult:
    """
    Minimise ``objective`` starting from ``start``.

    Parameters
    ----------
    objective : callable
        Maps a 1-d float array to a scalar. Non-finite values away from the
        start are treated as +inf.
    start : array_like
        Initial point; also the first simplex vertex.
    step : float or array_like, optional
        Edge lengths of the initial simplex along each axis. Defaults to 5%
        of each coordinate (0.00025 for zero coordinates).
    tol_x, tol_f : float
        Converged once the simplex fits in an inf-norm ball of radius
        ``tol_x`` around the best vertex and vertex values span at most ``tol_f``.
    max_iter : int
        Iteration budget; hitting it returns ``converged=False``.

    Returns
    -------
    NelderMeadResult
        ``(x, fun, iterations, converged)``; ``fun`` never exceeds the
        objective at ``start``.
    """
    x0 = np.atleast_1d(np.asarray(start, dtype=float)).copy()
    n = x0.size
    if n < 1:
        raise ValueError("need at least one dimension")
    f0 = float(objective(x0.copy()))
    if not math.isfinite(f0):
        raise NonFiniteObjective(f"objective is {f0} at the start point")

    if step is None:
        steps = np.where(x0 != 0.0, 0.05 * x0, 0.00025)
    else:
        steps = np.broadcast_to(np.asarray(step, dtype=float), (n,)).copy()

    def f(x):
        v = float(objective(x.copy()))
        return v if math.isfinite(v) else math.inf

    simplex = np.empty((n + 1, n))
    values = np.empty(n + 1)
    simplex[0], values[0] = x0, f0
    for i in range(n):
        v = x0.copy()
        v[i] += steps[i]
        simplex[i + 1], values[i + 1] = v, f(v)

    iterations = 0
    converged = False
    while True:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        size = np.max(np.abs(simplex[1:] - simplex[0]))
        spread = values[-1] - values[0]
        # both tests: vertices straddling a minimum can tie in value while far apart
        if size <= tol_x and spread <= tol_f:
            converged = True
            break
        if iterations >= max_iter:
            break
        iterations += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + reflect * (centroid - worst)
        fr = f(xr)
        if fr < values[0]:
            xe = centroid + expand * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            # outside contraction
            xc = centroid + contract * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = centroid + contract * (worst - centroid)
            fc = f(xc)
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        best = simplex[0]
        for i in range(1, n + 1):
            simplex[i] = best + shrink * (simplex[i] - best)
            values[i] = f(simplex[i])

    return NelderMeadResult(simplex[0].copy(), float(values[0]), iterations, converged)
