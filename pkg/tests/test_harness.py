import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motifgraph import harness
from motifgraph.errors import ConfigError, NonMonotoneSignal
from motifgraph.harness import CurvePoint, ExperimentConfig, wilson
from motifgraph.motif import preset, total_copies


@settings(max_examples=200)
@given(st.integers(1, 500), st.data())
def test_wilson_contains_estimate(trials, data):
    hits = data.draw(st.integers(0, trials))
    lo, hi = wilson(hits, trials)
    assert 0 <= lo <= hits / trials <= hi <= 1


def test_wilson_known_value():
    lo, hi = wilson(50, 100)
    assert lo == pytest.approx(0.4038, abs=1e-4)
    assert hi == pytest.approx(0.5962, abs=1e-4)


def test_config_round_trip():
    cfg = ExperimentConfig("triangle", 50, 10, 3, property="mindeg:2", grid=[0.001, 0.002])
    again = ExperimentConfig.from_json(cfg.to_json())
    assert again == cfg


@pytest.mark.parametrize("bad", [
    {"motif": "edge", "n": 10, "trials": 0, "seed": 1},
    {"motif": "edge", "n": 10, "trials": 5, "seed": 1, "grid": [0.2, 0.1]},
    {"motif": "edge", "n": 10, "trials": 5, "seed": 1, "grid": [0.5, 1.5]},
    {"motif": "edge", "n": 10, "trials": 5, "seed": 1, "model": "uniform", "grid": [1.5]},
    {"motif": "edge", "n": 10, "trials": 5, "seed": 1, "model": "other"},
    {"motif": "edge", "n": 10, "trials": 5, "seed": 1, "colour": "red"},
])
def test_config_rejects(bad):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json(json.dumps(bad))


def test_config_not_json():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("{oops")


def test_unknown_property():
    with pytest.raises(ConfigError):
        harness.resolve_property("planar")
    with pytest.raises(ConfigError):
        harness.resolve_property("mindeg:x")


def test_zero_probability_point():
    cfg = ExperimentConfig("triangle", 20, 20, 1, property="connected", grid=[0.0, 1.0])
    lo, hi = harness.threshold_curve(cfg)
    assert lo.p_hat == 0.0 and hi.p_hat == 1.0


def test_uniform_grid_and_contains():
    cfg = ExperimentConfig(
        "path:3", 12, 20, 1, property="contains:triangle", model="uniform", grid=[0, 1, 200]
    )
    pts = harness.threshold_curve(cfg)
    assert pts[0].p_hat == 0.0 and pts[1].p_hat == 0.0 and pts[2].p_hat == 1.0


def test_default_grid_geometry():
    g = harness.default_grid(1.0)
    assert len(g) == 7
    assert g[-1] / g[0] == pytest.approx(16)
    assert math.sqrt(g[0] * g[-1]) == pytest.approx(1.0)
    cfg = ExperimentConfig("edge", 30, 5, 1)
    assert len(harness.threshold_curve(cfg)) == 7


def test_curve_monotone_and_serialisation_stable():
    cfg = ExperimentConfig("edge", 40, 60, 5, property="connected")
    a = harness.threshold_curve(cfg)
    b = harness.threshold_curve(cfg)
    assert harness.curve_to_json(cfg, a) == harness.curve_to_json(cfg, b)
    assert harness.curve_to_csv(a) == harness.curve_to_csv(b)
    assert not harness.monotone_violations(a)
    header = harness.curve_to_csv(a).splitlines()[0]
    assert header == "p_or_m,trials,hits,p_hat,wilson_lo,wilson_hi"


def test_monotone_violation_detection():
    pts = [CurvePoint(0.1, 100, 90), CurvePoint(0.2, 100, 10)]
    assert harness.monotone_violations(pts) == [(0.1, 0.2)]


def test_phalf_nonempty_closed_form():
    H = preset("edge")
    n = 6
    N = total_copies(n, H)
    exact = 1 - 2 ** (-1 / N)
    res = harness.estimate_p_half("nonempty", n, H, 2000, 0.02, 3)
    assert abs(res.p - exact) / exact < 0.15


def test_phalf_single_coin():
    res = harness.estimate_p_half("connected", 2, preset("edge"), 4000, 0.01, 4)
    assert abs(res.p - 0.5) < 0.05


def test_phalf_raises_on_decreasing_signal(monkeypatch):
    # a property that holds only when the graph is empty decreases in p
    monkeypatch.setattr(
        harness, "resolve_property",
        lambda sel: (lambda g, budget: len(g.placements) == 0),
    )
    with pytest.raises(NonMonotoneSignal):
        harness.estimate_p_half("empty", 8, preset("edge"), 200, 0.01, 1)


def test_appearance_trivial_points():
    S = preset("path:3")
    res = harness.appearance_experiment(S, S, 10, [0, 1], 20, 1)
    assert [p["p_hat"] for p in res["points"]] == [0.0, 1.0]
    assert res["exponent"] == "0"


def test_isolated_stats():
    res = harness.isolated_vertex_stats(preset("path:3"), 50, 20, 1, p=1.0)
    assert res["mean"] == 0 and res["max"] == 0
    with pytest.raises(ConfigError):
        harness.isolated_vertex_stats(preset("edge"), 10, 5, 1)


def test_formulas_block():
    f = harness.formulas(preset("triangle"), 30, 2)
    assert f["aut"] == 6 and f["delta_d"] == 0
    assert f["p_minus"] < f["p_plus"]
