import json

import numpy as np
import pytest

from ces_transition.io import (
    FormatError,
    load_grid,
    load_scenario,
    load_series,
    load_trajectory,
    scenario_from_dict,
    trajectory_csv,
    write_fit_report,
    write_scenario,
    write_series,
    write_trajectory,
)
from ces_transition.scenario import ElasticityPath, PhaseDownSchedule, Scenario
from ces_transition.scurve import ScurveModel, SeriesData, evaluate, fit
from ces_transition.simulate import COLUMNS, simulate


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_scenario_round_trip(tmp_path):
    original = Scenario(
        label="des",
        alpha=0.7,
        sigma_path=ElasticityPath("exponential-decay", 0.5, 3.0, 0.035),
        fossil_schedule=PhaseDownSchedule("exponential", 0.5),
        re_cost_decline=0.01,
    )
    assert load_scenario(write_scenario(original, tmp_path / "s.json")) == original
    assert load_scenario(write_scenario(Scenario(), tmp_path / "d.json")) == Scenario()


def test_shipped_default_matches_code_default(data_dir):
    assert load_scenario(data_dir / "default_scenario.json") == Scenario()


def test_missing_keys_take_defaults():
    sc = scenario_from_dict({"alpha": 0.75, "sigma_path": {"sigma_start": 2.0}})
    assert sc.alpha == 0.75
    assert sc.sigma_path == ElasticityPath.constant(2.0)
    assert sc.fossil_schedule == PhaseDownSchedule()


def test_sigma_becomes_rho_on_load():
    sc = scenario_from_dict({"sigma_path": {"kind": "linear-decay", "sigma_start": 0.5, "sigma_end": 3.0}})
    assert sc.sigma_path.rho_start == pytest.approx(1.0)
    assert sc.sigma_path.rho_end == pytest.approx(-2 / 3)


@pytest.mark.parametrize(
    "doc,field",
    [
        ({"alphaa": 0.8}, "alphaa"),
        ({"sigma_path": {"sigma": 1.0}}, "sigma"),
        ({"demand_growth_rate": -0.1}, "demand_growth_rate"),
        ({"sigma_path": {"kind": "linear-decay", "sigma_start": 2.0, "sigma_end": -5.0}}, "sigma_path"),
        ({"fossil_schedule": {"final_share_fraction": 1.5}}, "fossil_schedule"),
        ({"label": 3}, "label"),
        ({"years": "85"}, "years"),
    ],
)
def test_invalid_scenarios_name_field(doc, field):
    with pytest.raises(FormatError) as info:
        scenario_from_dict(doc)
    assert info.value.field == field


def test_json_syntax_error_has_position(tmp_path):
    path = write(tmp_path / "bad.json", '{\n  "alpha": 0.8,\n  "years": }\n')
    with pytest.raises(FormatError) as info:
        load_scenario(path)
    assert info.value.line == 3
    assert info.value.column is not None
    assert "line 3" in str(info.value)


def test_trajectory_rows_and_header(tmp_path):
    table = simulate(Scenario(years=3))
    text = trajectory_csv(table)
    lines = text.splitlines()
    assert lines[0] == "t,rho,F,R,Y,share_F,p_R,p_F,carbon_tax,re_multiple"
    assert len(lines) == 5
    assert text.endswith("\n")


def test_trajectory_round_trip(tmp_path):
    table = simulate(Scenario(re_cost_decline=0.01))
    loaded = load_trajectory(write_trajectory(table, tmp_path / "t.csv"))
    for name in COLUMNS:
        np.testing.assert_allclose(loaded[name], table.column(name), rtol=1e-11, atol=0)


def test_clamp_only_affects_tax(tmp_path):
    table = simulate(Scenario(alpha=0.3, years=5))
    assert table.rows[0].carbon_tax < 0
    clamped = load_trajectory(write_trajectory(table, tmp_path / "c.csv", clamp_negative_tax=True))
    assert clamped["carbon_tax"].min() >= 0
    np.testing.assert_allclose(clamped["p_F"], table.column("p_F"), rtol=1e-11)


def test_writers_are_byte_deterministic(tmp_path):
    table = simulate(Scenario())
    a = write_trajectory(table, tmp_path / "a.csv").read_bytes()
    b = write_trajectory(simulate(Scenario()), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_series_round_trip(tmp_path):
    series = SeriesData(((1900, 0.1), (1910, 0.25), (1920, 0.6)), "x")
    loaded = load_series(write_series(series, tmp_path / "x.csv"))
    assert loaded.points == series.points
    assert loaded.label == "x"


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("year,share\n1900,0.1\n1910,1.2\n", 3, "1910"),
        ("year,share\n1900,0.1\n1900,0.2\n", 3, "duplicate"),
        ("year,share\n1910,0.1\n1900,0.2\n", 3, "order"),
        ("year,share\n1900,abc\n", 2, "non-numeric"),
        ("year,share\n1900,0.1,3\n", 2, "fields"),
        ("year,share\n1900,nan\n", 2, "non-finite"),
        ("yr,share\n1900,0.1\n", 1, "header"),
        ("", 1, "empty"),
    ],
)
def test_series_rejections(tmp_path, text, line, fragment):
    with pytest.raises(FormatError) as info:
        load_series(write(tmp_path / "s.csv", text))
    assert info.value.line == line
    assert fragment in str(info.value)


def test_out_of_range_share_names_field(tmp_path):
    with pytest.raises(FormatError) as info:
        load_series(write(tmp_path / "s.csv", "year,share\n1900,0.1\n1910,1.2\n"))
    assert info.value.field == "share"


def test_shipped_series_loads(data_dir):
    series = load_series(data_dir / "synthetic_logistic.csv")
    assert len(series) == 21
    assert series.years[0] == 1900 and series.years[-1] == 2000


def test_fit_report_ranked_and_stable(tmp_path):
    years = np.arange(1900, 2001, 5.0)
    series = SeriesData.from_arrays(years, evaluate(ScurveModel("bass", (0.005, 0.08), 1900.0), years), "b")
    fits = [fit("logistic", series), fit("bass", series)]
    path = write_fit_report(fits, tmp_path / "r.json", "b")
    doc = json.loads(path.read_text())
    assert [f["kind"] for f in doc["fits"]] == ["bass", "logistic"]
    assert set(doc["fits"][0]) >= {"kind", "parameters", "rmse", "r_squared", "converged"}
    again = write_fit_report(list(reversed(fits)), tmp_path / "r2.json", "b")
    assert path.read_bytes() == again.read_bytes()


def test_grid_loading(tmp_path, data_dir):
    grid = load_grid(data_dir / "default_grid.json")
    assert sorted(grid) == ["alpha", "re_cost_decline", "sigma"]
    with pytest.raises(FormatError) as info:
        load_grid(write(tmp_path / "g.json", '{"alpha": [], "sigma": [1]}'))
    assert info.value.field == "alpha"
    with pytest.raises(FormatError) as info:
        load_grid(write(tmp_path / "g.json", '{"temperature": [1]}'))
    assert info.value.field == "temperature"
