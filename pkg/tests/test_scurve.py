import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import expit

from ces_transition.scurve import (
    FitDegenerate,
    InsufficientData,
    ScurveError,
    ScurveModel,
    SeriesData,
    default_start,
    evaluate,
    fit,
    nest_logistic,
    params_valid,
    rmse_of,
)

YEARS = np.arange(1900, 2001, 5, dtype=float)


def logistic_series():
    return SeriesData.from_arrays(YEARS, expit(0.3 * (YEARS - 1950)), "logistic")


def test_evaluate_examples():
    assert evaluate(ScurveModel("logistic", (1.0, 0.0, 7.0)), 7.0) == 0.5
    assert evaluate(ScurveModel("logistic", (0.5, 0.0, 0.0)), 2.0) == pytest.approx(1 / (1 + math.e**-1), rel=1e-12)
    assert evaluate(ScurveModel("bass", (0.03, 0.4)), 0.0) == 0.0
    assert evaluate(ScurveModel("gompertz", (1.0, 0.2)), 0.0) == pytest.approx(math.exp(-1))


def test_evaluate_respects_origin():
    m = ScurveModel("gompertz", (1.0, 0.2), origin=1900.0)
    assert evaluate(m, 1900.0) == pytest.approx(math.exp(-1))


def test_evaluate_vectorised():
    out = evaluate(ScurveModel("logistic", (0.3, 0.0, 1950.0)), YEARS)
    assert out.shape == YEARS.shape


@pytest.mark.parametrize(
    "kind,params",
    [
        ("logistic", (0.0, 0.0, 1.0)),
        ("logistic-ho", (1.0, 0.0, 0.0, 1.0)),
        ("gompertz", (1.0, -0.1)),
        ("bass", (0.0, 0.3)),
        ("bass", (0.1, -0.3)),
    ],
)
def test_invalid_params_raise(kind, params):
    assert not params_valid(kind, params)
    with pytest.raises(ScurveError):
        evaluate(ScurveModel(kind, params), 1.0)


def test_model_arity_checked():
    with pytest.raises(ScurveError):
        ScurveModel("logistic", (1.0, 2.0))
    with pytest.raises(ScurveError):
        ScurveModel("richards", (1.0,))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 2.0), st.floats(-3, 3), st.floats(-50, 50))
def test_logistic_monotone_with_limits(alpha, beta, t0):
    m = ScurveModel("logistic", (alpha, beta, t0))
    centre = t0 - beta / alpha
    t = centre + np.linspace(-10, 10, 200) / alpha
    assert np.all(np.diff(evaluate(m, t)) > 0)
    scale = 1e6 / alpha
    assert evaluate(m, t0 - scale) == pytest.approx(0.0, abs=1e-12)
    assert evaluate(m, t0 + scale) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(0.01, 1.0))
def test_gompertz_monotone_with_limits(a, b):
    m = ScurveModel("gompertz", (a, b))
    t = np.linspace(0, 10 / b, 200)
    assert np.all(np.diff(evaluate(m, t)) > 0)
    assert evaluate(m, 1e6 / b) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.001, 0.1), st.floats(0.0, 1.0))
def test_bass_monotone_with_limits(p, q):
    m = ScurveModel("bass", (p, q))
    t = np.linspace(0.1, 5 / (p + q), 200)
    assert np.all(np.diff(evaluate(m, t)) > 0)
    assert evaluate(m, 1e-12) == pytest.approx(0.0, abs=1e-9)
    assert evaluate(m, 1e6 / (p + q)) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(-3, 3), st.floats(0.01, 1.0), st.sampled_from([1.0, -1.0]))
def test_higher_order_asymptotes(alpha, beta, gamma, sign):
    # the double exponential vanishes on one side, leaving expit(beta), and
    # saturates on the other at 1 (alpha > 0) or 0 (alpha < 0)
    a = sign * alpha
    m = ScurveModel("logistic-ho", (a, beta, gamma, 0.0))
    far = 1e6 / gamma
    assert evaluate(m, far) == pytest.approx(expit(beta), abs=1e-12)
    assert evaluate(m, -far) == pytest.approx(1.0 if a > 0 else 0.0, abs=1e-12)
    t = np.linspace(-5 / gamma, 5 / gamma, 200)
    d = np.diff(evaluate(m, t))
    assert np.all(d <= 0) if a > 0 else np.all(d >= 0)


def test_higher_order_does_not_collapse_to_logistic():
    t = np.linspace(1900, 2000, 21)
    log = evaluate(ScurveModel("logistic", (0.3, 0.0, 1950.0)), t)
    ho = evaluate(ScurveModel("logistic-ho", (0.3, 0.0, 1e-9, 1950.0)), t)
    # gamma -> 0 freezes the exponent at -alpha - beta
    np.testing.assert_allclose(ho, expit(0.3), rtol=1e-6)
    assert np.max(np.abs(ho - log)) > 0.4


def test_nested_start_tracks_logistic_near_centre():
    base = ScurveModel("logistic", (0.3, 0.0, 1950.0))
    t = np.linspace(1945, 1955, 11)
    for tail in ("upper", "lower"):
        ho = nest_logistic(base, gamma_fraction=1e-3, tail=tail)
        np.testing.assert_allclose(evaluate(ho, t), evaluate(base, t), atol=1e-3)


def test_series_validation():
    with pytest.raises(ScurveError):
        SeriesData(((1.0, 0.2), (1.0, 0.3)))
    with pytest.raises(ScurveError):
        SeriesData(((1.0, 1.2),))
    with pytest.raises(ScurveError):
        SeriesData(((1.0, math.nan),))


def test_default_start_knot_crossing():
    series = SeriesData(((1900, 0.1), (1950, 0.5), (2000, 0.9)))
    assert default_start("logistic", series)[2] == 1950


def test_default_start_midpoint_fallback():
    series = SeriesData(((1900, 0.01), (1920, 0.05), (1960, 0.2)))
    assert default_start("logistic", series)[2] == 1930


def test_default_start_interpolates():
    series = SeriesData(((1900, 0.2), (1940, 0.4), (1960, 0.8)))
    assert default_start("logistic", series)[2] == pytest.approx(1945.0)


def test_fit_errors():
    with pytest.raises(FitDegenerate):
        fit("logistic", SeriesData.from_arrays(YEARS, np.full(YEARS.size, 0.3)))
    with pytest.raises(InsufficientData):
        fit("logistic", SeriesData(((1, 0.1), (2, 0.2), (3, 0.4))))
    with pytest.raises(InsufficientData):
        fit("logistic-ho", SeriesData(((1, 0.1), (2, 0.2), (3, 0.4), (4, 0.6))))
    with pytest.raises(ScurveError):
        fit("logistic", logistic_series(), start=[1.0, 2.0])


def test_fit_report_consistency():
    series = logistic_series()
    f = fit("gompertz", series)
    assert f.rmse == pytest.approx(rmse_of(f.model, series), abs=1e-12)
    assert f.r_squared <= 1.0
    assert f.model.origin == 1900.0


@pytest.mark.parametrize(
    "kind,model",
    [
        ("logistic", ScurveModel("logistic", (0.3, 0.0, 1950.0))),
        ("gompertz", ScurveModel("gompertz", (5.0, 0.08), 1900.0)),
        ("bass", ScurveModel("bass", (0.005, 0.08), 1900.0)),
    ],
)
def test_refit_is_idempotent(kind, model):
    series = SeriesData.from_arrays(YEARS, evaluate(model, YEARS))
    first = fit(kind, series)
    again = fit(kind, series, start=first.model.params)
    assert abs(again.rmse - first.rmse) < 1e-10


def test_fit_is_deterministic():
    series = SeriesData.from_arrays(YEARS, evaluate(ScurveModel("gompertz", (5.0, 0.08), 1900.0), YEARS))
    assert fit("bass", series) == fit("bass", series)


def test_higher_order_beats_logistic_on_asymmetric_data():
    series = SeriesData.from_arrays(YEARS, evaluate(ScurveModel("gompertz", (5.0, 0.08), 1900.0), YEARS))
    assert fit("logistic-ho", series).rmse < fit("logistic", series).rmse


@pytest.mark.parametrize(
    "model",
    [
        ScurveModel("logistic", (0.3, 0.0, 1950.0)),
        ScurveModel("gompertz", (5.0, 0.08), 1900.0),
        ScurveModel("bass", (0.005, 0.08), 1900.0),
    ],
    ids=lambda m: m.kind,
)
def test_default_start_is_close_to_generator(model):
    series = SeriesData.from_arrays(YEARS, evaluate(model, YEARS))
    start = default_start(model.kind, series)
    assert params_valid(model.kind, start)
    assert rmse_of(ScurveModel(model.kind, tuple(start), model.origin), series) < 0.1
    for got, true in zip(start, model.params):
        if true == 0:
            assert got == 0
        else:
            assert 1 / 100 < got / true < 100
