#pragma once

// Process state machine:
//   Idle -> LowerTray -> BoilWater -> Cook -> RaiseTray -> Ignite -> Smoke -> Dry -> Done
// with Fault reachable from every non-terminal phase.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smokehouse/devices.hpp"
#include "smokehouse/errors.hpp"

namespace smokehouse::sequencer {

enum class Phase { Idle, LowerTray, BoilWater, Cook, RaiseTray, Ignite, Smoke, Dry, Done, Fault };

inline constexpr Phase kNominalOrder[] = {Phase::Idle,      Phase::LowerTray, Phase::BoilWater,
                                          Phase::Cook,      Phase::RaiseTray, Phase::Ignite,
                                          Phase::Smoke,     Phase::Dry,       Phase::Done};

enum class FaultCause { SensorInvalid, SensorStuck, Overtemp, PlantDiverged };

std::string_view to_string(Phase phase);
std::optional<Phase> phase_from_string(std::string_view text);
std::string_view to_string(FaultCause cause);

inline constexpr std::string_view kCookSensor = "cook_zone";
inline constexpr std::string_view kSmokeSensor = "smoke_firebox";

struct Band {
  double low;
  double high;
};

/// Durations in seconds, temperatures in degC.
struct PhasePlan {
  double boil_max = 300.0;
  double cook = 1200.0;
  double smoke = 900.0;
  double dry = 1200.0;
  double boil_target = 98.0;
  double cook_setpoint = 85.0;
  double smoke_setpoint = 65.0;
  Band cook_band{75.0, 90.0};
  Band smoke_band{60.0, 70.0};
  double overtemp_limit = 110.0;
  double ignite_pulse = 5.0;
  double stuck_timeout = 60.0;   // unchanged cook reading tolerated this long...
  double stuck_min_duty = 0.5;   // ...while heater duty is above this
};

std::vector<Violation> validate(const PhasePlan& plan, std::string_view prefix = "plan");

/// Upper bound on the process time: boil_max + cook + smoke + dry.
double plan_total_duration(const PhasePlan& plan);

struct SequencerState {
  Phase phase = Phase::Idle;
  double phase_elapsed = 0.0;
  double total_elapsed = 0.0;
  std::optional<FaultCause> fault_cause;
  devices::TrayCommand tray_target = devices::TrayCommand::Hold;
  // Stuck-sensor bookkeeping.
  std::optional<double> last_cook_value;
  double unchanged_for = 0.0;
};

/// Which loop the engine should close for the current phase.
enum class Controller { None, HeaterFull, HeaterPid, SmokeFan };

struct StepSignals {
  bool start = false;
  double heater_duty = 0.0;  // duty commanded on the previous tick
  bool plant_diverged = false;
};

using Readings = std::map<std::string, devices::SensorReading, std::less<>>;

struct StepResult {
  SequencerState state;
  devices::ActuatorBank bank;
  Controller controller = Controller::None;
  double setpoint = 0.0;
  bool transitioned = false;
};

/// Throws ConfigError if the plan is invalid.
SequencerState sequencer_start(const PhasePlan& plan);

/// Evaluates safety triggers and the exit rule of the current phase (at most
/// one transition per call), then emits the bank for the resulting phase and
/// advances its timers by dt.
StepResult sequencer_step(const SequencerState& state, const Readings& readings,
                          const devices::TrayActuator& tray, const PhasePlan& plan, double dt,
                          const StepSignals& signals = {});

/// Actuator bank a phase drives before any closed loop fills in its channel.
devices::ActuatorBank phase_bank(Phase phase);

}  // namespace smokehouse::sequencer
