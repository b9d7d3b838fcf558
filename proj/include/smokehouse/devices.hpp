#pragma once

// Sensor, tray lift and actuator-bank models.

#include <array>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "smokehouse/plant.hpp"

namespace smokehouse::devices {

// Actuator ids understood by apply_actuators.
inline constexpr std::string_view kHeater = "heater";
inline constexpr std::string_view kCombustion = "combustion";
inline constexpr std::string_view kBoilerFans = "boiler_fans";
inline constexpr std::string_view kSmokeFan = "smoke_fan";
inline constexpr std::array<std::string_view, 4> kBoilerFanChannels = {
    "boiler_fan_1", "boiler_fan_2", "boiler_fan_3", "boiler_fan_4"};

/// Digital probe with 1/16 degC resolution and a 750 ms conversion time.
struct SensorModel {
  double resolution = 0.0625;
  double conversion_period = 0.75;
  double noise_sigma = 0.0;
  double range_min = -55.0;
  double range_max = 125.0;
};

struct SensorReading {
  double value = 0.0;
  double sample_time = -std::numeric_limits<double>::infinity();
  bool valid = false;
};

/// Sample-and-hold quantizing read. Noise is drawn from `rng` only when
/// noise_sigma > 0; pass nullptr for a noiseless sensor.
SensorReading sensor_sample(double true_temp, const SensorModel& model, double t,
                            const SensorReading& last, std::mt19937_64* rng = nullptr);

enum class TrayCommand { Hold, Raise, Lower };

std::string_view to_string(TrayCommand command);

struct TrayActuator {
  int steps_per_rev = 200;
  double driver_pulley_diameter = 0.03;
  double belt_speed = 0.0785398163397448;  // 6 cm pulley at 25 rpm
  double travel = 0.30;
  double position = 0.0;  // 0 = raised, 1 = lowered
  bool moving = false;
};

TrayActuator tray_update(const TrayActuator& tray, TrayCommand command, double dt);

/// Full-step count from the raised position, derived from belt travel.
long tray_step_count(const TrayActuator& tray);

struct ActuatorBank {
  bool heater = false;
  bool igniter = false;
  std::array<bool, 4> boiler_fans{};
  bool smoke_fan = false;
  TrayCommand tray = TrayCommand::Hold;

  void set_boiler_fans(bool on) { boiler_fans.fill(on); }
  bool any_boiler_fan() const;
};

/// One igniter pulse lights the sawdust for burn_duration seconds.
struct CombustionLatch {
  double burn_duration = 2400.0;
  std::optional<double> lit_at;

  bool burning(double t) const { return lit_at && t - *lit_at < burn_duration; }
};

/// Translates the bank into the plant's actuator map. The only state
/// touched is the combustion latch, which an igniter pulse lights.
/// Throws ConfigError if the plant references an actuator this bank does
/// not drive.
plant::ActuatorInputs apply_actuators(const ActuatorBank& bank, CombustionLatch& latch, double t,
                                      const plant::PlantConfig& config);

/// Checks that every actuator the plant references is one apply_actuators drives.
std::vector<Violation> validate_actuator_references(const plant::PlantConfig& config,
                                                    std::string_view prefix = "plant");

}  // namespace smokehouse::devices
