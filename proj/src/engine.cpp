#include "smokehouse/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace smokehouse::engine {

using sequencer::Controller;
using sequencer::Phase;

ScenarioConfig preset_scenario(plant::Preset preset) {
  ScenarioConfig c;
  c.preset_name = std::string(plant::preset_name(preset));
  c.plant = plant::default_plant_config(preset);
  // Boil ends on temperature; the ceiling only catches a heater that cannot
  // get there.
  c.plan.boil_max = 900.0;
  c.gains.cook = {0.5, 0.01, 0.0};
  c.gains.smoke = {0.5, 0.005, 0.0};
  // The cook probe sits in the boiler water next to the heating element.
  c.devices.sensors = {{std::string(sequencer::kCookSensor), "boiler_water"},
                       {std::string(sequencer::kSmokeSensor), "smoke_firebox"}};
  c.devices.tray.belt_speed = mechanics::belt_velocity(0.06, 25.0);
  return c;
}

ScenarioConfig default_scenario() { return preset_scenario(plant::Preset::ScadLarge); }

std::vector<Violation> validate(const ScenarioConfig& c) {
  auto out = plant::validate(c.plant, "plant");
  auto append = [&out](std::vector<Violation> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()),
               std::make_move_iterator(more.end()));
  };
  append(devices::validate_actuator_references(c.plant, "plant"));
  append(sequencer::validate(c.plan, "plan"));

  auto add = [&out](std::string path, std::string msg) {
    out.push_back({std::move(path), std::move(msg)});
  };
  auto check_gains = [&](const control::PidGains& g, std::string_view name) {
    if (!(g.kp >= 0.0 && g.ki >= 0.0 && g.kd >= 0.0)) {
      add(fmt::format("gains.{}", name), "kp, ki and kd must all be >= 0");
    } else if (g.kp == 0.0 && g.ki == 0.0 && g.kd == 0.0) {
      add(fmt::format("gains.{}", name), "at least one gain must be > 0");
    }
  };
  check_gains(c.gains.cook, "cook");
  if (c.control.fan_mode == FanMode::Pid) check_gains(c.gains.smoke, "smoke");

  if (!(c.control.relay_window > 0.0)) add("control.relay_window", "must be > 0");
  if (!(c.control.fan_hysteresis > 0.0)) add("control.fan_hysteresis", "must be > 0");
  if (!(c.control.windup_limit > 0.0)) add("control.windup_limit", "must be > 0");
  if (!(c.control.overshoot_weight >= 0.0)) add("control.overshoot_weight", "must be >= 0");

  const auto& s = c.devices.sensor;
  if (!(s.resolution > 0.0)) add("devices.sensor.resolution", "must be > 0");
  if (!(s.conversion_period > 0.0)) add("devices.sensor.conversion_period", "must be > 0");
  if (!(s.noise_sigma >= 0.0)) add("devices.sensor.noise_sigma", "must be >= 0");
  if (!(s.range_min < s.range_max)) add("devices.sensor.range_min", "must be below range_max");
  bool has_cook = false, has_smoke = false;
  for (std::size_t i = 0; i < c.devices.sensors.size(); ++i) {
    const auto& b = c.devices.sensors[i];
    if (!c.plant.index_of(b.node)) {
      add(fmt::format("devices.sensors[{}].node", i), fmt::format("unknown node '{}'", b.node));
    }
    has_cook |= b.name == sequencer::kCookSensor;
    has_smoke |= b.name == sequencer::kSmokeSensor;
  }
  if (!has_cook || !has_smoke) {
    add("devices.sensors", "sensors named cook_zone and smoke_firebox are required");
  }
  const auto& t = c.devices.tray;
  if (!(t.belt_speed > 0.0)) add("devices.tray.belt_speed", "must be > 0");
  if (!(t.travel > 0.0)) add("devices.tray.travel", "must be > 0");
  if (!(t.position >= 0.0 && t.position <= 1.0)) add("devices.tray.position", "must be in [0, 1]");
  if (t.steps_per_rev <= 0) add("devices.tray.steps_per_rev", "must be > 0");
  if (!(t.driver_pulley_diameter > 0.0)) add("devices.tray.driver_pulley_diameter", "must be > 0");
  if (!(c.devices.burn_duration > 0.0)) add("devices.burn_duration", "must be > 0");

  const auto& st = c.steps;
  if (!(st.plant_dt > 0.0 && st.plant_dt <= 1.0)) add("steps.plant_dt", "must be in (0, 1] s");
  if (!(st.control_dt > 0.0)) {
    add("steps.control_dt", "must be > 0");
  } else if (st.plant_dt > 0.0) {
    const double ratio = st.control_dt / st.plant_dt;
    if (ratio < 1.0 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
      add("steps.control_dt", "must be an integer multiple of steps.plant_dt");
    }
  }
  return out;
}

const PhaseStats* RunSummary::phase(Phase p) const {
  for (const auto& s : phases) {
    if (s.phase == p) return &s;
  }
  return nullptr;
}

std::string reading_column(const std::string& sensor_name) {
  if (sensor_name == sequencer::kCookSensor) return "R_cook";
  if (sensor_name == sequencer::kSmokeSensor) return "R_smoke";
  return "R_" + sensor_name;
}

namespace {

std::optional<std::size_t> sensor_index(const Telemetry& tel, std::string_view name) {
  for (std::size_t i = 0; i < tel.sensor_names.size(); ++i) {
    if (tel.sensor_names[i] == name) return i;
  }
  return std::nullopt;
}

Regulation regulation(const Telemetry& tel, Phase phase, std::size_t sensor, double setpoint) {
  Regulation r;
  r.setpoint = setpoint;
  std::vector<double> values, weights;
  double prev_t = 0.0;
  for (const auto& rec : tel.records) {
    if (rec.phase == phase) {
      values.push_back(rec.readings[sensor]);
      weights.push_back(rec.t - prev_t);
    }
    prev_t = rec.t;
  }
  if (values.empty()) return r;

  double overshoot = 0.0;
  std::optional<std::size_t> first_in, last_out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double err = values[i] - setpoint;
    overshoot = std::max(overshoot, err);
    r.iae += std::abs(err) * weights[i];
    if (std::abs(err) <= kRegulationBand) {
      if (!first_in) first_in = i;
    } else {
      last_out = i;
    }
  }
  r.overshoot = overshoot;

  const std::size_t settle = last_out ? *last_out + 1 : 0;
  if (settle < values.size()) {
    double t = 0.0;
    for (std::size_t i = 0; i < settle; ++i) t += weights[i];
    r.settling_time = t;
  }
  if (first_in) {
    double in = 0.0, total = 0.0;
    for (std::size_t i = *first_in; i < values.size(); ++i) {
      total += weights[i];
      if (std::abs(values[i] - setpoint) <= kRegulationBand) in += weights[i];
    }
    r.time_in_band_fraction = total > 0.0 ? in / total : 0.0;
  }
  return r;
}

}  // namespace

RunSummary summarize(const Telemetry& tel, const ScenarioConfig& config) {
  if (tel.records.empty()) throw InvalidInput("summarize: telemetry is empty");
  RunSummary s;

  const std::size_t n_sensors = tel.sensor_names.size();
  double prev_t = 0.0;
  Phase prev_phase = Phase::Idle;
  for (const auto& rec : tel.records) {
    const double dt = rec.t - prev_t;
    prev_t = rec.t;
    if (s.phases.empty() || s.phases.back().phase != rec.phase) {
      if (!s.phases.empty()) s.events.push_back({rec.t - dt, prev_phase, rec.phase});
      PhaseStats ps{rec.phase, 0.0, rec.readings, rec.readings};
      s.phases.push_back(std::move(ps));
    }
    prev_phase = rec.phase;
    auto& ps = s.phases.back();
    ps.duration += dt;
    for (std::size_t i = 0; i < n_sensors; ++i) {
      ps.min_reading[i] = std::min(ps.min_reading[i], rec.readings[i]);
      ps.max_reading[i] = std::max(ps.max_reading[i], rec.readings[i]);
    }
  }
  s.total_duration = tel.records.back().t;

  const Phase last = tel.records.back().phase;
  s.terminal = last;
  if (last == Phase::Dry) {
    const auto* dry = s.phase(Phase::Dry);
    if (dry && dry->duration >= config.plan.dry - 1e-9) {
      s.terminal = Phase::Done;
      s.events.push_back({s.total_duration, Phase::Dry, Phase::Done});
    }
  }

  if (auto cook = sensor_index(tel, sequencer::kCookSensor)) {
    s.peak_cook_reading = tel.records.front().readings[*cook];
    for (const auto& rec : tel.records) {
      s.peak_cook_reading = std::max(s.peak_cook_reading, rec.readings[*cook]);
    }
    if (s.phase(Phase::Cook)) {
      s.cook = regulation(tel, Phase::Cook, *cook, config.plan.cook_setpoint);
    }
  }
  if (auto smoke = sensor_index(tel, sequencer::kSmokeSensor); smoke && s.phase(Phase::Smoke)) {
    s.smoke = regulation(tel, Phase::Smoke, *smoke, config.plan.smoke_setpoint);
  }
  return s;
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  if (auto v = validate(config); !v.empty()) throw ConfigError(std::move(v));

  const plant::ThermalNetwork net(config.plant);
  plant::PlantState plant_state = plant::initial_state(config.plant);

  RunResult result;
  auto& tel = result.telemetry;
  for (const auto& n : config.plant.nodes) tel.node_names.push_back(n.name);
  std::vector<std::size_t> sensor_nodes;
  for (const auto& b : config.devices.sensors) {
    tel.sensor_names.push_back(b.name);
    sensor_nodes.push_back(*config.plant.index_of(b.node));
  }

  const double control_dt = config.steps.control_dt;
  const double plant_dt = config.steps.plant_dt;
  const auto substeps = static_cast<long>(std::lround(control_dt / plant_dt));
  const control::RelayWindow window{config.control.relay_window, 0.0};
  const auto& plan = config.plan;

  std::mt19937_64 rng(config.seed);
  sequencer::Readings readings;
  for (const auto& b : config.devices.sensors) readings[b.name] = devices::SensorReading{};

  auto seq = sequencer::sequencer_start(plan);
  devices::TrayActuator tray = config.devices.tray;
  devices::CombustionLatch latch{config.devices.burn_duration, std::nullopt};
  control::PidState pid;
  Controller active = Controller::None;
  bool fan_latched = false;
  double last_heater_duty = 0.0;
  bool seen_stop_phase = false;
  std::optional<sequencer::FaultCause> fault;
  std::string diagnostic;

  for (long tick = 0;; ++tick) {
    const double t = static_cast<double>(tick) * control_dt;
    if (t >= options.max_time) {
      diagnostic = "simulated time limit reached";
      break;
    }

    // sense
    for (std::size_t i = 0; i < config.devices.sensors.size(); ++i) {
      auto& r = readings[config.devices.sensors[i].name];
      r = devices::sensor_sample(plant_state.temperatures[sensor_nodes[i]], config.devices.sensor,
                                 t, r, &rng);
    }

    // sequence
    auto step = sequencer::sequencer_step(seq, readings, tray, plan, control_dt,
                                          {.start = true, .heater_duty = last_heater_duty});
    if (step.state.phase == Phase::Done) {
      seq = step.state;
      break;
    }
    if (options.stop_after) {
      if (step.state.phase == *options.stop_after) {
        seen_stop_phase = true;
      } else if (seen_stop_phase) {
        break;
      }
    }
    seq = step.state;
    auto bank = step.bank;

    // control
    if (step.controller != active) {
      pid = control::PidState{};
      fan_latched = false;
      active = step.controller;
    }
    double heater_duty = 0.0;
    std::optional<double> fan_duty;
    const auto& cook_reading = readings.find(sequencer::kCookSensor)->second;
    const auto& smoke_reading = readings.find(sequencer::kSmokeSensor)->second;
    try {
      switch (step.controller) {
        case Controller::HeaterFull:
          heater_duty = 1.0;
          break;
        case Controller::HeaterPid: {
          control::PidConfig pc{.setpoint = step.setpoint,
                                .sample_time = control_dt,
                                .windup_limit = config.control.windup_limit};
          auto out = control::pid_step(pid, config.gains.cook, pc, cook_reading.value, control_dt);
          pid = out.state;
          heater_duty = out.output;
          break;
        }
        case Controller::SmokeFan:
          if (config.control.fan_mode == FanMode::Hysteresis) {
            fan_latched = control::fan_hysteresis(smoke_reading.value, step.setpoint,
                                                  config.control.fan_hysteresis, fan_latched);
            bank.smoke_fan = fan_latched;
          } else {
            control::PidConfig pc{.setpoint = step.setpoint,
                                  .sample_time = control_dt,
                                  .windup_limit = config.control.windup_limit,
                                  .action = control::Action::Reverse};
            auto out =
                control::pid_step(pid, config.gains.smoke, pc, smoke_reading.value, control_dt);
            pid = out.state;
            fan_duty = out.output;
          }
          break;
        case Controller::None:
          break;
      }
    } catch (const ControllerFault& e) {
      seq.phase = Phase::Fault;
      seq.fault_cause = sequencer::FaultCause::SensorInvalid;
      bank = sequencer::phase_bank(Phase::Fault);
      heater_duty = 0.0;
      fan_duty.reset();
      diagnostic = e.what();
    }
    if (!bank.heater) heater_duty = 0.0;
    last_heater_duty = heater_duty;

    // actuate + integrate
    TelemetryRecord rec;
    rec.heater_duty = heater_duty;
    bool diverged = false;
    for (long sub = 0; sub < substeps; ++sub) {
      const double ts = static_cast<double>(tick * substeps + sub) * plant_dt;
      auto applied = bank;
      applied.heater = bank.heater && control::relay_modulate(heater_duty, window, ts);
      if (fan_duty) applied.smoke_fan = control::relay_modulate(*fan_duty, window, ts);
      if (sub == 0) {
        rec.heater_on = applied.heater;
        rec.igniter = applied.igniter;
        rec.boiler_fans = applied.any_boiler_fan();
        rec.smoke_fan = applied.smoke_fan;
      }
      const auto inputs = devices::apply_actuators(applied, latch, ts, config.plant);
      tray = devices::tray_update(tray, bank.tray, plant_dt);
      try {
        plant_state = net.step(plant_state, inputs, plant_dt);
      } catch (const PlantDiverged& e) {
        diverged = true;
        diagnostic = e.what();
        break;
      }
    }
    if (diverged) {
      // The diverging tick is recorded as the Fault tick.
      seq.phase = Phase::Fault;
      seq.fault_cause = sequencer::FaultCause::PlantDiverged;
      seq.phase_elapsed = control_dt;
    }

    // record
    rec.t = static_cast<double>(tick + 1) * control_dt;
    rec.phase = seq.phase;
    rec.node_temps = plant_state.temperatures;
    for (const auto& b : config.devices.sensors) rec.readings.push_back(readings[b.name].value);
    rec.tray_position = tray.position;
    tel.records.push_back(std::move(rec));

    if (seq.phase == Phase::Fault) {
      fault = seq.fault_cause;
      break;
    }
  }

  if (tel.records.empty()) {
    result.summary.terminal = seq.phase;
    result.summary.diagnostic = diagnostic;
    return result;
  }
  result.summary = summarize(tel, config);
  if (seq.phase == Phase::Done) {
    result.summary.terminal = Phase::Done;
  } else if (seq.phase == Phase::Fault) {
    result.summary.terminal = Phase::Fault;
  } else if (result.summary.terminal == Phase::Done) {
    // stopped early at a Dry boundary without the sequencer finishing
    result.summary.terminal = seq.phase;
  }
  result.summary.fault_cause = fault;
  result.summary.diagnostic = diagnostic;
  return result;
}

bool verify_determinism(const ScenarioConfig& config) {
  const auto a = run_scenario(config);
  const auto b = run_scenario(config);
  return telemetry_csv(a.telemetry) == telemetry_csv(b.telemetry);
}

std::string telemetry_csv(const Telemetry& tel) {
  std::string out = "t_s,phase";
  for (const auto& n : tel.node_names) out += ",T_" + n;
  for (const auto& s : tel.sensor_names) out += "," + reading_column(s);
  out += ",heater_duty,heater_on,igniter,boiler_fans,smoke_fan,tray_pos\n";
  out.reserve(out.size() + tel.records.size() * 128);
  for (const auto& r : tel.records) {
    fmt::format_to(std::back_inserter(out), "{:.3f},{}", r.t, sequencer::to_string(r.phase));
    for (double v : r.node_temps) fmt::format_to(std::back_inserter(out), ",{:.4f}", v);
    for (double v : r.readings) fmt::format_to(std::back_inserter(out), ",{:.4f}", v);
    fmt::format_to(std::back_inserter(out), ",{:.4f},{:d},{:d},{:d},{:d},{:.4f}\n", r.heater_duty,
                   int(r.heater_on), int(r.igniter), int(r.boiler_fans), int(r.smoke_fan),
                   r.tray_position);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(fmt::format("telemetry line {}: '{}' is not a number", line_no, s));
  }
}

}  // namespace

Telemetry parse_telemetry_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("telemetry line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);

  Telemetry tel;
  std::vector<std::size_t> node_cols, sensor_cols;
  std::optional<std::size_t> col_t, col_phase, col_duty, col_heater, col_ign, col_bf, col_sf,
      col_tray;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& h = header[i];
    if (h == "t_s") col_t = i;
    else if (h == "phase") col_phase = i;
    else if (h == "heater_duty") col_duty = i;
    else if (h == "heater_on") col_heater = i;
    else if (h == "igniter") col_ign = i;
    else if (h == "boiler_fans") col_bf = i;
    else if (h == "smoke_fan") col_sf = i;
    else if (h == "tray_pos") col_tray = i;
    else if (h.starts_with("T_")) {
      tel.node_names.push_back(h.substr(2));
      node_cols.push_back(i);
    } else if (h.starts_with("R_")) {
      std::string name = h.substr(2);
      if (name == "cook") name = std::string(sequencer::kCookSensor);
      if (name == "smoke") name = std::string(sequencer::kSmokeSensor);
      tel.sensor_names.push_back(name);
      sensor_cols.push_back(i);
    } else {
      throw InvalidInput(fmt::format("telemetry line 1: unknown column '{}'", h));
    }
  }
  if (!col_t || !col_phase || !col_duty || !col_heater || !col_ign || !col_bf || !col_sf ||
      !col_tray) {
    throw InvalidInput("telemetry line 1: missing required columns");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw InvalidInput(fmt::format("telemetry line {}: expected {} fields, got {}", line_no,
                                     header.size(), f.size()));
    }
    TelemetryRecord r;
    r.t = parse_number(f[*col_t], line_no);
    const auto phase = sequencer::phase_from_string(f[*col_phase]);
    if (!phase) {
      throw InvalidInput(fmt::format("telemetry line {}: unknown phase '{}'", line_no, f[*col_phase]));
    }
    r.phase = *phase;
    for (auto c : node_cols) r.node_temps.push_back(parse_number(f[c], line_no));
    for (auto c : sensor_cols) r.readings.push_back(parse_number(f[c], line_no));
    r.heater_duty = parse_number(f[*col_duty], line_no);
    r.heater_on = parse_number(f[*col_heater], line_no) != 0.0;
    r.igniter = parse_number(f[*col_ign], line_no) != 0.0;
    r.boiler_fans = parse_number(f[*col_bf], line_no) != 0.0;
    r.smoke_fan = parse_number(f[*col_sf], line_no) != 0.0;
    r.tray_position = parse_number(f[*col_tray], line_no);
    if (!tel.records.empty() && r.t <= tel.records.back().t) {
      throw InvalidInput(fmt::format("telemetry line {}: time is not increasing", line_no));
    }
    tel.records.push_back(std::move(r));
  }
  return tel;
}

namespace {

template <typename... Args>
void append_line(std::string& out, fmt::format_string<Args...> f, Args&&... args) {
  fmt::format_to(std::back_inserter(out), f, std::forward<Args>(args)...);
  out += '\n';
}

}  // namespace

std::string format_summary(const RunSummary& s, const Telemetry& tel) {
  std::string out;
  append_line(out, "Run summary");
  append_line(out, "  terminal phase     {}", sequencer::to_string(s.terminal));
  if (s.fault_cause) append_line(out, "  fault cause        {}", sequencer::to_string(*s.fault_cause));
  if (!s.diagnostic.empty()) append_line(out, "  diagnostic         {}", s.diagnostic);
  append_line(out, "  total duration     {:.0f} s ({:.2f} min)", s.total_duration, s.total_duration / 60.0);
  append_line(out, "  peak cook reading  {:.4f} degC", s.peak_cook_reading);
  out += '\n';
  std::string head = fmt::format("  {:<10}{:>10}", "phase", "duration");
  for (const auto& name : tel.sensor_names) {
    head += fmt::format("{:>12}{:>12}", reading_column(name) + " min", reading_column(name) + " max");
  }
  out += head + '\n';
  for (const auto& p : s.phases) {
    std::string row = fmt::format("  {:<10}{:>9.0f}s", sequencer::to_string(p.phase), p.duration);
    for (std::size_t i = 0; i < p.min_reading.size(); ++i) {
      row += fmt::format("{:>12.4f}{:>12.4f}", p.min_reading[i], p.max_reading[i]);
    }
    out += row + '\n';
  }
  auto reg = [&](std::string_view name, const std::optional<Regulation>& r) {
    if (!r) return;
    out += '\n';
    append_line(out, "  {} regulation at {:.2f} degC (+/-{:.0f})", name, r->setpoint, kRegulationBand);
    append_line(out, "    overshoot        {:.4f} degC", r->overshoot);
    if (r->settling_time) {
      append_line(out, "    settling time    {:.0f} s", *r->settling_time);
    } else {
      append_line(out, "    settling time    not settled");
    }
    append_line(out, "    time in band     {:.4f}", r->time_in_band_fraction);
    append_line(out, "    IAE              {:.2f} degC*s", r->iae);
  };
  reg("cook", s.cook);
  reg("smoke", s.smoke);
  if (!s.events.empty()) {
    out += '\n';
    append_line(out, "Run log");
    for (const auto& e : s.events) {
      append_line(out, "  t={:>7.0f} s  {} -> {}", e.t, sequencer::to_string(e.from), sequencer::to_string(e.to));
    }
  }

  out += '\n';
  append_line(out, "[summary]");
  append_line(out, "terminal={}", sequencer::to_string(s.terminal));
  append_line(out, "fault_cause={}", s.fault_cause ? sequencer::to_string(*s.fault_cause) : "none");
  append_line(out, "total_duration_s={:.3f}", s.total_duration);
  append_line(out, "total_duration_min={:.4f}", s.total_duration / 60.0);
  append_line(out, "peak_cook_reading={:.4f}", s.peak_cook_reading);
  for (const auto& p : s.phases) {
    append_line(out, "phase.{}.duration_s={:.3f}", sequencer::to_string(p.phase), p.duration);
  }
  auto reg_kv = [&](std::string_view name, const std::optional<Regulation>& r) {
    if (!r) return;
    append_line(out, "{}.setpoint={:.4f}", name, r->setpoint);
    append_line(out, "{}.overshoot={:.4f}", name, r->overshoot);
    append_line(out, "{}.settling_time_s={}", name,
         r->settling_time ? fmt::format("{:.3f}", *r->settling_time) : std::string("none"));
    append_line(out, "{}.time_in_band_fraction={:.6f}", name, r->time_in_band_fraction);
    append_line(out, "{}.iae={:.4f}", name, r->iae);
  };
  reg_kv("cook", s.cook);
  reg_kv("smoke", s.smoke);
  return out;
}

}  // namespace smokehouse::engine
