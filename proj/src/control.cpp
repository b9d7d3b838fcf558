#include "smokehouse/control.hpp"

#include <algorithm>
#include <cmath>

#include "smokehouse/errors.hpp"

namespace smokehouse::control {

PidStep pid_step(const PidState& state, const PidGains& gains, const PidConfig& config,
                 double measurement, double dt) {
  if (!std::isfinite(measurement)) throw ControllerFault("non-finite measurement");
  if (!(dt > 0.0)) throw InvalidInput("pid_step: dt must be > 0");

  const double sign = config.action == Action::Direct ? 1.0 : -1.0;
  const double error = sign * (config.setpoint - measurement);
  // Derivative on measurement: no kick when the setpoint changes between phases.
  const double derivative =
      state.initialized ? sign * (measurement - state.prev_measurement) / dt : 0.0;

  auto clamp_out = [&](double u) { return std::clamp(u, config.output_min, config.output_max); };

  const double candidate =
      std::clamp(state.integral + gains.ki * error * dt, -config.windup_limit, config.windup_limit);
  const double unsaturated = gains.kp * error + candidate - gains.kd * derivative;

  PidState next = state;
  const bool saturated_high = unsaturated > config.output_max;
  const bool saturated_low = unsaturated < config.output_min;
  if ((!saturated_high && !saturated_low) || (saturated_high && error < 0.0) ||
      (saturated_low && error > 0.0)) {
    next.integral = candidate;
  }

  const double output = clamp_out(gains.kp * error + next.integral - gains.kd * derivative);
  next.prev_measurement = measurement;
  next.last_output = output;
  next.initialized = true;
  return {next, output};
}

bool relay_modulate(double duty, const RelayWindow& window, double t) {
  if (duty <= 0.0) return false;
  if (duty >= 1.0) return true;
  const double length = window.window_length;
  const double elapsed = t - window.window_start;
  double position = elapsed - std::floor(elapsed / length) * length;
  // Times are built from integer tick counts; snap values within rounding of a
  // window edge back onto it.
  const double eps = 1e-9 * length;
  if (length - position < eps) position = 0.0;
  return position < duty * length - eps;
}

bool fan_hysteresis(double measurement, double setpoint, double hysteresis, bool currently_on) {
  if (measurement > setpoint) return true;
  if (currently_on && measurement >= setpoint - hysteresis) return true;
  return false;
}

}  // namespace smokehouse::control
