"""CES energy-substitution carbon-tax simulator and S-curve fitting toolkit."""

from .ces import (
    CesParams,
    DomainError,
    FactorPoint,
    InfeasibleIsoquant,
    PricePair,
    calibrate_initial,
    ces_output,
    invert_renewable,
    mrts,
    price_elasticity,
    quantity_ratio_from_prices,
    relative_price,
    rho_to_sigma,
    sigma_to_rho,
)
from .optimize import NelderMeadResult, nelder_mead
from .scenario import ElasticityPath, PhaseDownSchedule, Scenario, validate
from .scurve import ScurveFit, ScurveModel, SeriesData, evaluate, fit
from .simulate import (
    ScenarioInvalid,
    SimulationInfeasible,
    TrajectoryTable,
    simulate,
    simulate_sweep,
    tax_peak,
)

__version__ = "0.1.0"
