"""
Two-factor CES algebra for a fossil (F) / renewable (R) energy pair.

    Y = [alpha * F**(-rho) + (1 - alpha) * R**(-rho)] ** (-1 / rho)

with elasticity of substitution sigma = 1 / (1 + rho). Everything here is a
pure scalar function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# below this |rho| the Cobb-Douglas limit F**alpha * R**(1-alpha) is used
COBB_DOUGLAS_TOL = 1e-7
# |1 + rho| below this is treated as a singular (sigma -> infinity) exponent
SINGULAR_TOL = 1e-12


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a CES formula."""


class InfeasibleIsoquant(ValueError):
    """No non-negative R reaches the target output for the given F.

    For rho > 0 fossil input alone bounds output from above, so the residual
    ``(Y**-rho - alpha*F**-rho) / (1 - alpha)`` turns non-positive once F
    falls to ``alpha**(1/rho) * Y``.
    """

    def __init__(self, fossil: float, target_output: float, rho: float, msg: str | None = None):
        self.fossil = fossil
        self.target_output = target_output
        self.rho = rho
        super().__init__(
            msg
            or f"isoquant Y={target_output:.6g} unreachable with F={fossil:.6g} (rho={rho:.6g})"
        )


@dataclass(frozen=True)
class CesParams:
    alpha: float
    rho: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (math.isfinite(self.rho) and self.rho > -1.0):
            raise DomainError(f"rho must be finite and > -1, got {self.rho}")

    @classmethod
    def from_sigma(cls, alpha: float, sigma: float) -> "CesParams":
        return cls(alpha, sigma_to_rho(sigma))

    @property
    def sigma(self) -> float:
        return 1.0 / (1.0 + self.rho)

    @property
    def cobb_douglas(self) -> bool:
        return abs(self.rho) < COBB_DOUGLAS_TOL


@dataclass(frozen=True)
class FactorPoint:
    fossil: float
    renewable: float


@dataclass(frozen=True)
class PricePair:
    p_fossil: float
    p_renewable: float

    def __post_init__(self):
        if not (self.p_fossil > 0 and self.p_renewable > 0):
            raise DomainError(f"prices must be positive, got {self.p_fossil}, {self.p_renewable}")

    @property
    def ratio(self) -> float:
        return self.p_fossil / self.p_renewable


def sigma_to_rho(sigma: float) -> float:
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError(f"sigma must be finite and positive, got {sigma}")
    return 1.0 / sigma - 1.0


def rho_to_sigma(rho: float) -> float:
    if abs(1.0 + rho) < SINGULAR_TOL:
        return math.inf
    return 1.0 / (1.0 + rho)


def _require_positive(**kwargs):
    for name, value in kwargs.items():
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value}")


def ces_output(params: CesParams, point: FactorPoint) -> float:
    """Output Y produced by the factor bundle ``point``."""
    F, R = point.fossil, point.renewable
    _require_positive(fossil=F, renewable=R)
    a, rho = params.alpha, params.rho
    if params.cobb_douglas:
        return F**a * R ** (1.0 - a)
    # a*F^-rho + (1-a)*R^-rho written as 1 + inner so small rho keeps precision
    inner = a * math.expm1(-rho * math.log(F)) + (1.0 - a) * math.expm1(-rho * math.log(R))
    return math.exp(-math.log1p(inner) / rho)


def invert_renewable(params: CesParams, target_output: float, fossil: float) -> float:
    """
    Renewable input R that keeps output at ``target_output`` given ``fossil``.

    Raises
    ------
    InfeasibleIsoquant
        If the isoquant cannot be reached with a finite positive R.
    """
    Y, F = target_output, fossil
    _require_positive(target_output=Y, fossil=F)
    a, rho = params.alpha, params.rho
    if params.cobb_douglas:
        return (Y / F**a) ** (1.0 / (1.0 - a))
    # residual (Y^-rho - a*F^-rho) / (1-a), carried as 1 + u
    u = (math.expm1(-rho * math.log(Y)) - a * math.expm1(-rho * math.log(F))) / (1.0 - a)
    if not u > -1.0:
        raise InfeasibleIsoquant(F, Y, rho)
    try:
        R = math.exp(-math.log1p(u) / rho)
    except OverflowError:
        R = math.inf
    if not (math.isfinite(R) and R > 0):
        raise InfeasibleIsoquant(F, Y, rho, f"renewable requirement overflows at F={F:.6g}, Y={Y:.6g}")
    return R


def mrts(params: CesParams, point: FactorPoint) -> float:
    """
    Marginal rate of technical substitution of R for F, as a positive magnitude.

    The isoquant slope dR/dF is the negative of the returned value.
    """
    F, R = point.fossil, point.renewable
    _require_positive(fossil=F, renewable=R)
    a, rho = params.alpha, params.rho
    return a / (1.0 - a) * (R / F) ** (1.0 + rho)


def relative_price(params: CesParams, point: FactorPoint) -> float:
    """First-order-condition price ratio P_F / P_R at ``point``."""
    F, R = point.fossil, point.renewable
    _require_positive(fossil=F, renewable=R)
    a, rho = params.alpha, params.rho
    return a / (1.0 - a) * (F / R) ** (-rho - 1.0)


def quantity_ratio_from_prices(params: CesParams, prices: PricePair) -> float:
    """Cost-minimising quantity ratio F / R for a given price pair."""
    a, rho = params.alpha, params.rho
    if abs(1.0 + rho) < SINGULAR_TOL:
        raise DomainError("1 + rho vanishes; quantity ratio undefined")
    return ((1.0 - a) / a * prices.ratio) ** (-1.0 / (1.0 + rho))


def price_elasticity(params: CesParams) -> float:
    """Elasticity of F/R with respect to P_F/P_R, i.e. ``-sigma``."""
    if abs(1.0 + params.rho) < SINGULAR_TOL:
        raise DomainError("1 + rho vanishes; price elasticity undefined")
    return -1.0 / (1.0 + params.rho)


def calibrate_initial(alpha: float, rho: float, y0: float = 1.0) -> FactorPoint:
    """
    Initial (F0, R0) with fossil share F0 / (F0 + R0) = alpha and output y0.

    Writing F0 = alpha * s and R0 = (1 - alpha) * s, homogeneity gives
    s = y0 * [alpha**(1-rho) + (1-alpha)**(1-rho)] ** (1/rho); the rho -> 0
    limit is s = y0 / (alpha**alpha * (1-alpha)**(1-alpha)).
    """
    params = CesParams(alpha, rho)
    _require_positive(y0=y0)
    a = params.alpha
    if params.cobb_douglas:
        s = y0 / (a**a * (1.0 - a) ** (1.0 - a))
    else:
        inner = a * math.expm1(-rho * math.log(a)) + (1.0 - a) * math.expm1(-rho * math.log(1.0 - a))
        s = y0 * math.exp(math.log1p(inner) / rho)
    return FactorPoint(a * s, (1.0 - a) * s)
