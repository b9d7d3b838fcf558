#pragma once

// Belt/pulley lift drive sizing. All quantities SI: meters, newtons,
// watts, rpm for rotational speed.

#include <string>
#include <vector>

namespace smokehouse::mechanics {

inline constexpr double kStandardGravity = 9.81;

struct LoadSpec {
  double mass_kg = 5.0;
  double gravity_mps2 = kStandardGravity;
  int pulley_count = 1;
};

struct PulleySpec {
  double diameter_m = 0.0;
  double speed_rpm = 0.0;
  int teeth = 0;  // informational only; ratios are computed from diameters
};

/// `driver` carries the known speed; the speed of `driven` is derived.
struct BeltDrive {
  PulleySpec driver;
  PulleySpec driven;
  double center_distance_m = 0.0;
  double tension_N = 0.0;
};

struct LiftingForces {
  double weight_N;
  double effort_N;
};

struct DesignReport {
  double weight_N = 0;
  double effort_N = 0;
  double driven_speed_rpm = 0;
  double belt_velocity_mps = 0;
  double transmitted_power_W = 0;
  double belt_length_m = 0;
  double torque_driver_Nm = 0;
  double torque_driven_Nm = 0;
  std::vector<std::string> notes;
};

LiftingForces lifting_forces(const LoadSpec& load);

/// Speed of the second pulley on a shared belt: d1*n1 = d2*n2.
double driven_speed(double d1_m, double n1_rpm, double d2_m);

double belt_velocity(double diameter_m, double speed_rpm);

/// Power carried by a belt at the given tension and velocity (P = F*v).
double belt_power(double tension_N, double velocity_mps);

/// Inverse of belt_power.
double belt_tension(double power_W, double velocity_mps);

/// Open-belt length, including the (d1-d2)^2/(4D) wrap correction.
double belt_length(double d1_m, double d2_m, double center_distance_m);

double required_torque(double power_W, double speed_rpm);

DesignReport design_report(const LoadSpec& load, const BeltDrive& drive);

/// The machine as built: 5 kg batch, 6 cm pulley at 25 rpm driving a
/// 3 cm pulley, 10 cm between centers, 6.5 N belt tension.
LoadSpec default_load();
BeltDrive default_drive();

/// Aligned human-readable table followed by a `key=value` block.
std::string format_report(const DesignReport& report);

}  // namespace smokehouse::mechanics
