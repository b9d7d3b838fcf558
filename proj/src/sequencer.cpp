#include "smokehouse/sequencer.hpp"

#include <cmath>

#include <fmt/format.h>

namespace smokehouse::sequencer {

namespace {

constexpr std::pair<Phase, std::string_view> kPhaseNames[] = {
    {Phase::Idle, "Idle"},           {Phase::LowerTray, "LowerTray"}, {Phase::BoilWater, "BoilWater"},
    {Phase::Cook, "Cook"},           {Phase::RaiseTray, "RaiseTray"}, {Phase::Ignite, "Ignite"},
    {Phase::Smoke, "Smoke"},         {Phase::Dry, "Dry"},             {Phase::Done, "Done"},
    {Phase::Fault, "Fault"},
};

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string_view to_string(Phase phase) {
  for (const auto& [p, name] : kPhaseNames) {
    if (p == phase) return name;
  }
  return "?";
}

std::optional<Phase> phase_from_string(std::string_view text) {
  for (const auto& [p, name] : kPhaseNames) {
    if (name == text) return p;
  }
  return std::nullopt;
}

std::string_view to_string(FaultCause cause) {
  switch (cause) {
    case FaultCause::SensorInvalid: return "SensorInvalid";
    case FaultCause::SensorStuck: return "SensorStuck";
    case FaultCause::Overtemp: return "Overtemp";
    case FaultCause::PlantDiverged: return "PlantDiverged";
  }
  return "?";
}

std::vector<Violation> validate(const PhasePlan& plan, std::string_view prefix) {
  std::vector<Violation> out;
  const std::string p(prefix);
  auto need_positive = [&](double v, std::string_view field) {
    if (!positive(v)) out.push_back({fmt::format("{}.{}", p, field), fmt::format("must be > 0 (got {})", v)});
  };
  need_positive(plan.boil_max, "boil_max");
  need_positive(plan.cook, "cook");
  need_positive(plan.smoke, "smoke");
  need_positive(plan.dry, "dry");
  need_positive(plan.ignite_pulse, "ignite_pulse");
  need_positive(plan.stuck_timeout, "stuck_timeout");
  need_positive(plan.overtemp_limit, "overtemp_limit");
  if (!std::isfinite(plan.boil_target)) out.push_back({p + ".boil_target", "must be finite"});

  auto check_band = [&](const Band& band, double setpoint, std::string_view band_name,
                        std::string_view sp_name) {
    if (!(band.low < band.high)) {
      out.push_back({fmt::format("{}.{}", p, band_name), "low must be below high"});
      return;
    }
    if (!(setpoint >= band.low && setpoint <= band.high)) {
      out.push_back({fmt::format("{}.{}", p, sp_name),
                     fmt::format("{} is outside the {} [{}, {}] degC", setpoint, band_name,
                                 band.low, band.high)});
    }
  };
  check_band(plan.cook_band, plan.cook_setpoint, "cook_band", "cook_setpoint");
  check_band(plan.smoke_band, plan.smoke_setpoint, "smoke_band", "smoke_setpoint");
  return out;
}

double plan_total_duration(const PhasePlan& plan) {
  return plan.boil_max + plan.cook + plan.smoke + plan.dry;
}

SequencerState sequencer_start(const PhasePlan& plan) {
  if (auto v = validate(plan); !v.empty()) throw ConfigError(std::move(v));
  return SequencerState{};
}

devices::ActuatorBank phase_bank(Phase phase) {
  using devices::TrayCommand;
  devices::ActuatorBank bank;
  switch (phase) {
    case Phase::Idle:
    case Phase::Done:
      break;
    case Phase::LowerTray:
      bank.tray = TrayCommand::Lower;
      break;
    case Phase::BoilWater:
    case Phase::Cook:
      bank.heater = true;
      break;
    case Phase::RaiseTray:
      bank.tray = TrayCommand::Raise;
      break;
    case Phase::Ignite:
      bank.igniter = true;
      break;
    case Phase::Smoke:
      // smoke fan is closed-loop; the engine fills it in
      break;
    case Phase::Dry:
    case Phase::Fault:
      bank.set_boiler_fans(true);
      bank.smoke_fan = true;
      break;
  }
  return bank;
}

namespace {

std::optional<FaultCause> safety_check(SequencerState& s, const Readings& readings,
                                       const PhasePlan& plan, double dt,
                                       const StepSignals& signals) {
  if (signals.plant_diverged) return FaultCause::PlantDiverged;
  for (const auto& [name, r] : readings) {
    if (!r.valid) return FaultCause::SensorInvalid;
  }
  for (const auto& [name, r] : readings) {
    if (r.value > plan.overtemp_limit) return FaultCause::Overtemp;
  }
  const auto& cook = readings.find(kCookSensor)->second;
  if (signals.heater_duty > plan.stuck_min_duty && s.last_cook_value &&
      *s.last_cook_value == cook.value) {
    s.unchanged_for += dt;
  } else {
    s.unchanged_for = 0.0;
  }
  s.last_cook_value = cook.value;
  if (s.unchanged_for > plan.stuck_timeout) return FaultCause::SensorStuck;
  return std::nullopt;
}

std::optional<Phase> exit_rule(const SequencerState& s, const Readings& readings,
                               const devices::TrayActuator& tray, const PhasePlan& plan,
                               const StepSignals& signals) {
  switch (s.phase) {
    case Phase::Idle:
      return signals.start ? std::optional(Phase::LowerTray) : std::nullopt;
    case Phase::LowerTray:
      return tray.position >= 1.0 ? std::optional(Phase::BoilWater) : std::nullopt;
    case Phase::BoilWater: {
      const auto& cook = readings.find(kCookSensor)->second;
      if (cook.value >= plan.boil_target || s.phase_elapsed >= plan.boil_max) return Phase::Cook;
      return std::nullopt;
    }
    case Phase::Cook:
      return s.phase_elapsed >= plan.cook ? std::optional(Phase::RaiseTray) : std::nullopt;
    case Phase::RaiseTray:
      return tray.position <= 0.0 ? std::optional(Phase::Ignite) : std::nullopt;
    case Phase::Ignite:
      return s.phase_elapsed >= plan.ignite_pulse ? std::optional(Phase::Smoke) : std::nullopt;
    case Phase::Smoke:
      return s.phase_elapsed >= plan.smoke ? std::optional(Phase::Dry) : std::nullopt;
    case Phase::Dry:
      return s.phase_elapsed >= plan.dry ? std::optional(Phase::Done) : std::nullopt;
    case Phase::Done:
    case Phase::Fault:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

StepResult sequencer_step(const SequencerState& state, const Readings& readings,
                          const devices::TrayActuator& tray, const PhasePlan& plan, double dt,
                          const StepSignals& signals) {
  if (!(dt > 0.0)) throw InvalidInput("sequencer_step: dt must be > 0");
  if (!readings.contains(kCookSensor) || !readings.contains(kSmokeSensor)) {
    throw InvalidInput("sequencer_step: readings must include cook_zone and smoke_firebox");
  }

  StepResult out;
  out.state = state;
  auto& s = out.state;

  auto enter = [&](Phase next) {
    s.phase = next;
    s.phase_elapsed = 0.0;
    out.transitioned = true;
  };

  if (s.phase != Phase::Done && s.phase != Phase::Fault) {
    std::optional<FaultCause> fault;
    if (s.phase != Phase::Idle) fault = safety_check(s, readings, plan, dt, signals);
    if (fault) {
      enter(Phase::Fault);
      s.fault_cause = fault;
    } else if (auto next = exit_rule(s, readings, tray, plan, signals)) {
      enter(*next);
    }
  }

  out.bank = phase_bank(s.phase);
  s.tray_target = out.bank.tray;
  switch (s.phase) {
    case Phase::BoilWater:
      out.controller = Controller::HeaterFull;
      out.setpoint = plan.boil_target;
      break;
    case Phase::Cook:
      out.controller = Controller::HeaterPid;
      out.setpoint = plan.cook_setpoint;
      break;
    case Phase::Smoke:
      out.controller = Controller::SmokeFan;
      out.setpoint = plan.smoke_setpoint;
      break;
    default:
      out.controller = Controller::None;
      break;
  }

  if (s.phase != Phase::Idle && s.phase != Phase::Done) {
    s.phase_elapsed += dt;
    s.total_elapsed += dt;
  }
  return out;
}

}  // namespace smokehouse::sequencer
