#pragma once

// Fixed-timestep orchestration. Each control tick runs, in order:
//   sense -> sequence -> control -> actuate -> integrate -> record.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smokehouse/control.hpp"
#include "smokehouse/devices.hpp"
#include "smokehouse/mechanics.hpp"
#include "smokehouse/plant.hpp"
#include "smokehouse/sequencer.hpp"

namespace smokehouse::engine {

enum class FanMode { Hysteresis, Pid };

struct ControlSettings {
  double relay_window = 2.0;
  double fan_hysteresis = 0.5;
  FanMode fan_mode = FanMode::Hysteresis;
  double windup_limit = 1.0;
  double overshoot_weight = 10.0;  // tuner objective: IAE + weight * overshoot
};

struct PhaseGains {
  control::PidGains cook;   // heater, direct action
  control::PidGains smoke;  // smoke fan, reverse action (FanMode::Pid only)
};

/// Binds a logical sensor to the plant node it measures.
struct SensorBinding {
  std::string name;
  std::string node;
};

struct DeviceSettings {
  devices::SensorModel sensor;
  std::vector<SensorBinding> sensors;
  devices::TrayActuator tray;
  double burn_duration = 2400.0;
};

struct StepSizes {
  double plant_dt = 0.1;
  double control_dt = 1.0;
};

struct MechanicsSettings {
  mechanics::LoadSpec load = mechanics::default_load();
  mechanics::BeltDrive drive = mechanics::default_drive();
};

struct ScenarioConfig {
  std::string preset_name;
  plant::PlantConfig plant;
  sequencer::PhasePlan plan;
  PhaseGains gains;
  ControlSettings control;
  DeviceSettings devices;
  StepSizes steps;
  std::uint64_t seed = 0;
  MechanicsSettings mechanics;
};

/// Shipped scenario for a fish batch, including calibrated gains.
ScenarioConfig preset_scenario(plant::Preset preset);
ScenarioConfig default_scenario();

std::vector<Violation> validate(const ScenarioConfig& config);

struct TelemetryRecord {
  double t = 0.0;
  sequencer::Phase phase = sequencer::Phase::Idle;
  std::vector<double> node_temps;
  std::vector<double> readings;  // in DeviceSettings::sensors order
  double heater_duty = 0.0;
  bool heater_on = false;
  bool igniter = false;
  bool boiler_fans = false;
  bool smoke_fan = false;
  double tray_position = 0.0;
};

struct Telemetry {
  std::vector<std::string> node_names;
  std::vector<std::string> sensor_names;
  std::vector<TelemetryRecord> records;
};

struct PhaseStats {
  sequencer::Phase phase;
  double duration = 0.0;
  std::vector<double> min_reading;  // per sensor
  std::vector<double> max_reading;
};

/// Regulation quality of one closed-loop phase against its +/-1 degC band.
struct Regulation {
  double setpoint = 0.0;
  double overshoot = 0.0;
  std::optional<double> settling_time;  // last entry into the band, never left after
  double time_in_band_fraction = 0.0;   // measured from the first entry into the band
  double iae = 0.0;
};

struct PhaseEvent {
  double t;
  sequencer::Phase from;
  sequencer::Phase to;
};

struct RunSummary {
  std::vector<PhaseStats> phases;
  std::optional<Regulation> cook;
  std::optional<Regulation> smoke;
  double total_duration = 0.0;
  sequencer::Phase terminal = sequencer::Phase::Idle;
  std::optional<sequencer::FaultCause> fault_cause;
  double peak_cook_reading = 0.0;
  std::vector<PhaseEvent> events;
  std::string diagnostic;

  const PhaseStats* phase(sequencer::Phase p) const;
};

inline constexpr double kRegulationBand = 1.0;

struct RunOptions {
  /// Stop as soon as this phase has completed (used by the tuner).
  std::optional<sequencer::Phase> stop_after;
  /// Hard cap on simulated time; a run hitting it is reported as not Done.
  double max_time = 6.0 * 3600.0;
};

struct RunResult {
  Telemetry telemetry;
  RunSummary summary;
};

/// Throws ConfigError for invalid configs. Plant divergence ends the run in
/// Fault(PlantDiverged) with partial telemetry.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Throws InvalidInput on empty telemetry.
RunSummary summarize(const Telemetry& telemetry, const ScenarioConfig& config);

bool verify_determinism(const ScenarioConfig& config);

/// Header: t_s,phase,T_<node>...,R_cook,R_smoke,heater_duty,heater_on,
/// igniter,boiler_fans,smoke_fan,tray_pos. LF line endings.
std::string telemetry_csv(const Telemetry& telemetry);
/// Throws InvalidInput on malformed input.
Telemetry parse_telemetry_csv(const std::string& text);

/// Aligned text followed by a `[summary]` key=value block.
std::string format_summary(const RunSummary& summary, const Telemetry& telemetry);

/// CSV column label for a sensor (`cook_zone` -> `R_cook`).
std::string reading_column(const std::string& sensor_name);

}  // namespace smokehouse::engine
