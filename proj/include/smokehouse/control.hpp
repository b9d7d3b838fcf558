#pragma once

// Discrete PID with conditional-integration anti-windup, time-proportioned
// relay output and an on/off hysteresis switch.

namespace smokehouse::control {

struct PidGains {
  double kp = 0.0;  // duty per degC
  double ki = 0.0;  // duty per degC*s
  double kd = 0.0;  // duty*s per degC
};

/// Direct action heats (output rises when measurement is below setpoint);
/// reverse action cools.
enum class Action { Direct, Reverse };

struct PidConfig {
  double setpoint = 0.0;
  double output_min = 0.0;
  double output_max = 1.0;
  double sample_time = 1.0;
  double windup_limit = 1.0;  // bound on the integral term, in duty units
  Action action = Action::Direct;
};

/// `integral` already carries the ki factor, so it is directly in duty units.
struct PidState {
  double integral = 0.0;
  double prev_measurement = 0.0;
  double last_output = 0.0;
  bool initialized = false;
};

struct PidStep {
  PidState state;
  double output;
};

/// Throws ControllerFault on a non-finite measurement and InvalidInput on dt <= 0.
PidStep pid_step(const PidState& state, const PidGains& gains, const PidConfig& config,
                 double measurement, double dt);

struct RelayWindow {
  double window_length = 2.0;
  double window_start = 0.0;
};

/// On for the first duty*window_length seconds of every window.
bool relay_modulate(double duty, const RelayWindow& window, double t);

/// On above setpoint, off below setpoint - hysteresis, otherwise holds.
bool fan_hysteresis(double measurement, double setpoint, double hysteresis, bool currently_on);

}  // namespace smokehouse::control
