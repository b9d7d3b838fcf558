#include "smokehouse/mechanics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "smokehouse/errors.hpp"

namespace smokehouse::mechanics {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string sig3(double v) { return fmt::format("{:.3g}", v); }

}  // namespace

LiftingForces lifting_forces(const LoadSpec& load) {
  require(finite_positive(load.mass_kg), "mass must be > 0");
  require(finite_positive(load.gravity_mps2), "gravity must be > 0");
  require(load.pulley_count >= 1, "pulley_count must be >= 1");
  const double weight = load.mass_kg * load.gravity_mps2;
  return {weight, weight / load.pulley_count};
}

double driven_speed(double d1_m, double n1_rpm, double d2_m) {
  require(finite_positive(d1_m), "d1 must be > 0");
  require(finite_positive(d2_m), "d2 must be > 0");
  require(std::isfinite(n1_rpm) && n1_rpm >= 0.0, "n1 must be >= 0");
  return d1_m * n1_rpm / d2_m;
}

double belt_velocity(double diameter_m, double speed_rpm) {
  require(finite_positive(diameter_m), "diameter must be > 0");
  require(std::isfinite(speed_rpm) && speed_rpm >= 0.0, "speed must be >= 0");
  return std::numbers::pi * diameter_m * speed_rpm / 60.0;
}

double belt_power(double tension_N, double velocity_mps) {
  require(std::isfinite(tension_N) && tension_N >= 0.0, "tension must be >= 0");
  require(finite_positive(velocity_mps), "belt velocity must be > 0");
  return tension_N * velocity_mps;
}

double belt_tension(double power_W, double velocity_mps) {
  require(std::isfinite(power_W) && power_W >= 0.0, "power must be >= 0");
  require(finite_positive(velocity_mps), "belt velocity must be > 0");
  return power_W / velocity_mps;
}

double belt_length(double d1_m, double d2_m, double center_distance_m) {
  require(finite_positive(d1_m) && finite_positive(d2_m), "pulley diameters must be > 0");
  require(std::isfinite(center_distance_m) && center_distance_m > (d1_m + d2_m) / 2.0,
          "center distance must exceed the sum of the pulley radii");
  const double diff = d1_m - d2_m;
  return std::numbers::pi * (d1_m + d2_m) / 2.0 + 2.0 * center_distance_m +
         diff * diff / (4.0 * center_distance_m);
}

double required_torque(double power_W, double speed_rpm) {
  require(std::isfinite(power_W) && power_W >= 0.0, "power must be >= 0");
  require(finite_positive(speed_rpm), "speed must be > 0");
  return power_W / (2.0 * std::numbers::pi * speed_rpm / 60.0);
}

DesignReport design_report(const LoadSpec& load, const BeltDrive& drive) {
  require(std::isfinite(drive.tension_N) && drive.tension_N >= 0.0, "tension must be >= 0");
  DesignReport r;
  const auto forces = lifting_forces(load);
  r.weight_N = forces.weight_N;
  r.effort_N = forces.effort_N;
  r.driven_speed_rpm =
      driven_speed(drive.driver.diameter_m, drive.driver.speed_rpm, drive.driven.diameter_m);
  r.belt_length_m = belt_length(drive.driver.diameter_m, drive.driven.diameter_m,
                                drive.center_distance_m);
  r.belt_velocity_mps = belt_velocity(drive.driver.diameter_m, drive.driver.speed_rpm);
  r.transmitted_power_W = belt_power(drive.tension_N, r.belt_velocity_mps);
  r.torque_driver_Nm = required_torque(r.transmitted_power_W, drive.driver.speed_rpm);
  r.torque_driven_Nm = required_torque(r.transmitted_power_W, r.driven_speed_rpm);

  r.notes.push_back(fmt::format(
      "effort force uses W/P literally ({} N for {} pulley(s)); the belt power F*v = {} W is a "
      "different quantity and is not an effort force",
      sig3(r.effort_N), load.pulley_count, sig3(r.transmitted_power_W)));
  r.notes.push_back(
      "belt length includes the (d1-d2)^2/(4D) wrap term; omitting the /D divisor gives a "
      "result inconsistent with the sized belt");
  if (drive.driver.teeth > 0 && drive.driven.teeth > 0) {
    r.notes.push_back(fmt::format(
        "teeth counts {}/{} are informational; speed ratio comes from diameters ({:.3g})",
        drive.driver.teeth, drive.driven.teeth,
        drive.driver.diameter_m / drive.driven.diameter_m));
  }
  return r;
}

LoadSpec default_load() { return LoadSpec{5.0, kStandardGravity, 1}; }

BeltDrive default_drive() {
  return BeltDrive{
      .driver = {.diameter_m = 0.06, .speed_rpm = 25.0, .teeth = 11},
      .driven = {.diameter_m = 0.03, .speed_rpm = 0.0, .teeth = 18},
      .center_distance_m = 0.10,
      .tension_N = 6.5,
  };
}

std::string format_report(const DesignReport& r) {
  std::string out;
  auto row = [&out](std::string_view label, const std::string& value, std::string_view unit) {
    out += fmt::format("  {:<26}{:>10} {}\n", label, value, unit);
  };
  out += "Lift drive design report\n";
  row("load weight", sig3(r.weight_N), "N");
  row("effort force", sig3(r.effort_N), "N");
  row("driven pulley speed", sig3(r.driven_speed_rpm), "rpm");
  row("belt velocity", sig3(r.belt_velocity_mps), "m/s");
  row("transmitted power", sig3(r.transmitted_power_W), "W");
  row("belt length", sig3(r.belt_length_m * 100.0), "cm");
  row("torque, driver pulley", sig3(r.torque_driver_Nm), "N*m");
  row("torque, driven pulley", sig3(r.torque_driven_Nm), "N*m");
  if (!r.notes.empty()) {
    out += "Notes\n";
    for (const auto& note : r.notes) out += "  - " + note + "\n";
  }
  out += "\n[mechanics]\n";
  out += fmt::format("weight_N={:.6g}\n", r.weight_N);
  out += fmt::format("effort_N={:.6g}\n", r.effort_N);
  out += fmt::format("driven_speed_rpm={:.6g}\n", r.driven_speed_rpm);
  out += fmt::format("belt_velocity_mps={:.6g}\n", r.belt_velocity_mps);
  out += fmt::format("transmitted_power_W={:.6g}\n", r.transmitted_power_W);
  out += fmt::format("belt_length_m={:.6g}\n", r.belt_length_m);
  out += fmt::format("torque_driver_Nm={:.6g}\n", r.torque_driver_Nm);
  out += fmt::format("torque_driven_Nm={:.6g}\n", r.torque_driven_Nm);
  return out;
}

}  // namespace smokehouse::mechanics
