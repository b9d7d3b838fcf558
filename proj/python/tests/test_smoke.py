import csv
import io
import json
import os

import pytest

import smokehouse


def test_presets_listed():
    assert smokehouse.presets() == ["scad_large", "scad_medium", "milkfish", "tilapia"]


def test_mechanics_defaults():
    r = smokehouse.mechanics_report()
    assert r["weight_N"] == pytest.approx(49.05)
    assert r["driven_speed_rpm"] == pytest.approx(50.0)
    assert r["belt_length_m"] == pytest.approx(0.3436, abs=5e-4)


def test_run_preset_completes():
    r = smokehouse.run("tilapia")
    assert r["terminal"] == "Done"
    assert r["fault_cause"] is None
    assert r["phase_durations"]["Cook"] == pytest.approx(1200.0, abs=1.0)
    rows = list(csv.DictReader(io.StringIO(r["telemetry_csv"])))
    assert float(rows[-1]["t_s"]) == pytest.approx(r["total_duration"])
    assert r["cook"]["time_in_band_fraction"] >= 0.95


def test_run_is_deterministic():
    assert smokehouse.run("milkfish")["telemetry_csv"] == smokehouse.run("milkfish")["telemetry_csv"]


def test_overrides_and_fault():
    r = smokehouse.run("tilapia", overrides=["plan.overtemp_limit=90"])
    assert r["terminal"] == "Fault"
    assert r["fault_cause"] == "Overtemp"


def test_unknown_override_raises():
    with pytest.raises(smokehouse.ConfigError):
        smokehouse.run(overrides=["plan.nope=1"])


def test_validate_and_scenario_dict():
    cfg = smokehouse.scenario("milkfish")
    assert cfg["preset"] == "milkfish"
    cfg["plan"]["cook_setpoint"] = 95
    problems = smokehouse.validate(config=cfg)
    assert problems and problems[0][0] == "plan.cook_setpoint"


def test_shipped_config_file_loads():
    path = os.path.join(os.environ.get("SMOKEHOUSE_CONFIG_DIR", "configs"), "scad_medium.json")
    with open(path, encoding="utf-8") as f:
        assert smokehouse.scenario(config=path) == json.load(f)


def test_equilibrium_gradient():
    eq = smokehouse.equilibrium("scad_large", heater=True)
    assert eq["boiler_water"] > eq["cook_zone"] > eq["smoke_firebox"]


def test_summarize_round_trip():
    r = smokehouse.run("scad_medium")
    s = smokehouse.summarize(r["telemetry_csv"], "scad_medium")
    assert s["total_duration"] == r["total_duration"]
    assert s["terminal"] == "Done"


def test_pid_step_clamps():
    out, integral = smokehouse.pid_step(0.1, 0.0, 0.0, 85.0, 20.0)
    assert out == 1.0 and integral == 0.0


def test_tune_never_worse():
    r = smokehouse.tune("tilapia", "cook", budget=4)
    assert r["evaluations"] == 4
    assert r["objective"] <= r["initial_objective"]


def test_cli_exit_codes():
    code, out, _ = smokehouse.cli(["mechanics"])
    assert code == 0 and "[mechanics]" in out
    assert smokehouse.cli(["validate", "--preset", "salmon"])[0] == 1
