#include "smokehouse/devices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace smokehouse::devices {

SensorReading sensor_sample(double true_temp, const SensorModel& model, double t,
                            const SensorReading& last, std::mt19937_64* rng) {
  if (t - last.sample_time < model.conversion_period) return last;

  double raw = true_temp;
  if (model.noise_sigma > 0.0 && rng != nullptr) {
    std::normal_distribution<double> noise(0.0, model.noise_sigma);
    raw += noise(*rng);
  }
  SensorReading r;
  r.sample_time = t;
  if (!std::isfinite(raw)) {
    r.value = 0.0;
    r.valid = false;
    return r;
  }
  r.value = std::nearbyint(raw / model.resolution) * model.resolution;
  r.valid = raw >= model.range_min && raw <= model.range_max;
  return r;
}

std::string_view to_string(TrayCommand command) {
  switch (command) {
    case TrayCommand::Hold: return "hold";
    case TrayCommand::Raise: return "raise";
    case TrayCommand::Lower: return "lower";
  }
  return "hold";
}

TrayActuator tray_update(const TrayActuator& tray, TrayCommand command, double dt) {
  TrayActuator next = tray;
  if (command == TrayCommand::Hold) {
    next.moving = false;
    return next;
  }
  const double target = command == TrayCommand::Lower ? 1.0 : 0.0;
  const double max_move = tray.belt_speed / tray.travel * dt;
  const double gap = target - tray.position;
  if (std::abs(gap) <= max_move) {
    next.position = target;
    next.moving = false;
  } else {
    next.position = std::clamp(tray.position + std::copysign(max_move, gap), 0.0, 1.0);
    next.moving = true;
  }
  return next;
}

long tray_step_count(const TrayActuator& tray) {
  const double revs = tray.position * tray.travel / (std::numbers::pi * tray.driver_pulley_diameter);
  return std::lround(revs * tray.steps_per_rev);
}

bool ActuatorBank::any_boiler_fan() const {
  return std::any_of(boiler_fans.begin(), boiler_fans.end(), [](bool b) { return b; });
}

namespace {

bool is_driven_id(std::string_view id) {
  if (id == kHeater || id == kCombustion || id == kBoilerFans || id == kSmokeFan) return true;
  return std::find(kBoilerFanChannels.begin(), kBoilerFanChannels.end(), id) !=
         kBoilerFanChannels.end();
}

}  // namespace

std::vector<Violation> validate_actuator_references(const plant::PlantConfig& config,
                                                    std::string_view prefix) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < config.sources.size(); ++i) {
    if (!is_driven_id(config.sources[i].driven_by)) {
      out.push_back({fmt::format("{}.sources[{}].driven_by", prefix, i),
                     fmt::format("undeclared actuator '{}'", config.sources[i].driven_by)});
    }
  }
  for (std::size_t i = 0; i < config.conductances.size(); ++i) {
    const auto& fan = config.conductances[i].fan;
    if (!fan.empty() && !is_driven_id(fan)) {
      out.push_back({fmt::format("{}.conductances[{}].fan", prefix, i),
                     fmt::format("undeclared fan '{}'", fan)});
    }
  }
  return out;
}

plant::ActuatorInputs apply_actuators(const ActuatorBank& bank, CombustionLatch& latch, double t,
                                      const plant::PlantConfig& config) {
  if (auto v = validate_actuator_references(config); !v.empty()) throw ConfigError(std::move(v));
  if (bank.igniter && !latch.lit_at) latch.lit_at = t;

  plant::ActuatorInputs in;
  in.emplace(kHeater, bank.heater);
  in.emplace(kCombustion, latch.burning(t));
  // Ganged channel: the fan bank counts as running only when all four run.
  in.emplace(kBoilerFans, std::all_of(bank.boiler_fans.begin(), bank.boiler_fans.end(),
                                      [](bool b) { return b; }));
  for (std::size_t i = 0; i < kBoilerFanChannels.size(); ++i) {
    in.emplace(kBoilerFanChannels[i], bank.boiler_fans[i]);
  }
  in.emplace(kSmokeFan, bank.smoke_fan);
  return in;
}

}  // namespace smokehouse::devices
