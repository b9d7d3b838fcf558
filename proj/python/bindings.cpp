#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smokehouse/cli.hpp"
#include "smokehouse/config.hpp"
#include "smokehouse/control.hpp"
#include "smokehouse/engine.hpp"
#include "smokehouse/mechanics.hpp"
#include "smokehouse/tuner.hpp"

namespace py = pybind11;
using namespace smokehouse;

namespace {

engine::ScenarioConfig scenario_from(const std::string& preset, const std::string& config_json,
                                     const std::vector<std::string>& overrides) {
  if (!config_json.empty()) {
    auto doc = config::parse_json(config_json, "<config>");
    if (!preset.empty() && doc.is_object()) doc["preset"] = preset;
    return config::load_scenario(doc.dump(), "<config>", overrides);
  }
  return config::preset_with_overrides(preset.empty() ? "scad_large" : preset, overrides);
}

py::dict regulation_dict(const engine::Regulation& r) {
  py::dict d;
  d["setpoint"] = r.setpoint;
  d["overshoot"] = r.overshoot;
  d["settling_time"] = r.settling_time ? py::cast(*r.settling_time) : py::none();
  d["time_in_band_fraction"] = r.time_in_band_fraction;
  d["iae"] = r.iae;
  return d;
}

py::dict summary_dict(const engine::RunSummary& s) {
  py::dict d;
  d["terminal"] = std::string(sequencer::to_string(s.terminal));
  d["fault_cause"] =
      s.fault_cause ? py::cast(std::string(sequencer::to_string(*s.fault_cause))) : py::none();
  d["total_duration"] = s.total_duration;
  d["peak_cook_reading"] = s.peak_cook_reading;
  py::dict phases;
  for (const auto& p : s.phases) {
    phases[py::str(std::string(sequencer::to_string(p.phase)))] = p.duration;
  }
  d["phase_durations"] = phases;
  d["cook"] = s.cook ? py::object(regulation_dict(*s.cook)) : py::none();
  d["smoke"] = s.smoke ? py::object(regulation_dict(*s.smoke)) : py::none();
  d["diagnostic"] = s.diagnostic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smoked-fish machine simulator core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NoEquilibrium>(m, "NoEquilibrium", PyExc_ArithmeticError);

  m.def("presets", [] {
    std::vector<std::string> names;
    for (auto p : plant::kAllPresets) names.emplace_back(plant::preset_name(p));
    return names;
  }, "Names of the shipped fish presets.");

  m.def("scenario_json",
        [](const std::string& preset, const std::string& config_json,
           const std::vector<std::string>& overrides) {
          return config::to_json(scenario_from(preset, config_json, overrides)).dump(2);
        },
        py::arg("preset") = "", py::arg("config_json") = "",
        py::arg("overrides") = std::vector<std::string>{},
        "Fully populated scenario document as JSON text.");

  m.def("validate",
        [](const std::string& preset, const std::string& config_json,
           const std::vector<std::string>& overrides) {
          std::vector<std::pair<std::string, std::string>> out;
          for (const auto& v : engine::validate(scenario_from(preset, config_json, overrides))) {
            out.emplace_back(v.path, v.message);
          }
          return out;
        },
        py::arg("preset") = "", py::arg("config_json") = "",
        py::arg("overrides") = std::vector<std::string>{},
        "List of (path, message) violations; empty when valid.");

  m.def("run",
        [](const std::string& preset, const std::string& config_json,
           const std::vector<std::string>& overrides) {
          const auto cfg = scenario_from(preset, config_json, overrides);
          engine::RunResult r;
          {
            py::gil_scoped_release release;
            r = engine::run_scenario(cfg);
          }
          py::dict d = summary_dict(r.summary);
          d["telemetry_csv"] = engine::telemetry_csv(r.telemetry);
          return d;
        },
        py::arg("preset") = "", py::arg("config_json") = "",
        py::arg("overrides") = std::vector<std::string>{},
        "Simulate one batch. Returns the summary plus the telemetry CSV text.");

  m.def("summarize",
        [](const std::string& telemetry_csv, const std::string& preset,
           const std::string& config_json) {
          const auto cfg = scenario_from(preset, config_json, {});
          return summary_dict(engine::summarize(engine::parse_telemetry_csv(telemetry_csv), cfg));
        },
        py::arg("telemetry_csv"), py::arg("preset") = "", py::arg("config_json") = "");

  m.def("equilibrium",
        [](const std::string& preset, const std::map<std::string, bool>& inputs) {
          const auto cfg = scenario_from(preset, "", {});
          plant::ActuatorInputs in;
          for (const auto& id : plant::referenced_actuators(cfg.plant)) in[id] = false;
          for (const auto& [k, v] : inputs) in[k] = v;
          return plant::equilibrium_temps(cfg.plant, in);
        },
        py::arg("preset") = "", py::arg("inputs") = std::map<std::string, bool>{},
        "Steady-state node temperatures for constant actuator inputs.");

  m.def("mechanics_report",
        [](double mass_kg, double driver_diameter_m, double driver_rpm, double driven_diameter_m,
           double center_distance_m, double tension_N) {
          mechanics::LoadSpec load = mechanics::default_load();
          load.mass_kg = mass_kg;
          mechanics::BeltDrive drive = mechanics::default_drive();
          drive.driver.diameter_m = driver_diameter_m;
          drive.driver.speed_rpm = driver_rpm;
          drive.driven.diameter_m = driven_diameter_m;
          drive.center_distance_m = center_distance_m;
          drive.tension_N = tension_N;
          const auto r = mechanics::design_report(load, drive);
          py::dict d;
          d["weight_N"] = r.weight_N;
          d["effort_N"] = r.effort_N;
          d["driven_speed_rpm"] = r.driven_speed_rpm;
          d["belt_velocity_mps"] = r.belt_velocity_mps;
          d["transmitted_power_W"] = r.transmitted_power_W;
          d["belt_length_m"] = r.belt_length_m;
          d["torque_driver_Nm"] = r.torque_driver_Nm;
          d["torque_driven_Nm"] = r.torque_driven_Nm;
          d["notes"] = r.notes;
          return d;
        },
        py::arg("mass_kg") = 5.0, py::arg("driver_diameter_m") = 0.06,
        py::arg("driver_rpm") = 25.0, py::arg("driven_diameter_m") = 0.03,
        py::arg("center_distance_m") = 0.10, py::arg("tension_N") = 6.5);

  m.def("pid_step",
        [](double kp, double ki, double kd, double setpoint, double measurement, double dt,
           double integral, double prev_measurement, bool initialized, bool reverse) {
          control::PidConfig c;
          c.setpoint = setpoint;
          c.sample_time = dt;
          c.action = reverse ? control::Action::Reverse : control::Action::Direct;
          control::PidState s{integral, prev_measurement, 0.0, initialized};
          const auto r = control::pid_step(s, {kp, ki, kd}, c, measurement, dt);
          return py::make_tuple(r.output, r.state.integral);
        },
        py::arg("kp"), py::arg("ki"), py::arg("kd"), py::arg("setpoint"), py::arg("measurement"),
        py::arg("dt") = 1.0, py::arg("integral") = 0.0, py::arg("prev_measurement") = 0.0,
        py::arg("initialized") = false, py::arg("reverse") = false,
        "One controller update. Returns (output, integral).");

  m.def("tune",
        [](const std::string& preset, const std::string& phase, int budget) {
          if (phase != "cook" && phase != "smoke") throw InvalidInput("phase must be cook or smoke");
          const auto cfg = scenario_from(preset, "", {});
          const auto tp = phase == "smoke" ? tuner::TunePhase::Smoke : tuner::TunePhase::Cook;
          const auto& initial = tp == tuner::TunePhase::Cook ? cfg.gains.cook : cfg.gains.smoke;
          tuner::TuneResult r;
          {
            py::gil_scoped_release release;
            r = tuner::tune_gains(cfg, tp, initial, budget);
          }
          py::dict d;
          d["kp"] = r.gains.kp;
          d["ki"] = r.gains.ki;
          d["kd"] = r.gains.kd;
          d["objective"] = r.objective;
          d["initial_objective"] = r.initial_objective;
          d["evaluations"] = r.evaluations;
          return d;
        },
        py::arg("preset") = "", py::arg("phase") = "cook", py::arg("budget") = 200);

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process. Returns (code, stdout, stderr).");
}
