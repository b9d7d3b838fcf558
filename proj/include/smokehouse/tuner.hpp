#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smokehouse/control.hpp"
#include "smokehouse/engine.hpp"

namespace smokehouse::tuner {

struct NelderMeadOptions {
  int max_evaluations = 200;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  // Stop once both the spread in f and the simplex extent drop below these.
  double tolerance = 1e-9;
  double x_tolerance = 1e-6;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int evaluations;
};

/// Derivative-free minimization. Non-finite objective values are treated as
/// +infinity. The start point is always the first evaluation, so a budget of
/// one returns it unchanged.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, std::vector<double> steps,
                             const NelderMeadOptions& options = {});

enum class TunePhase { Cook, Smoke };

/// IAE of the phase's controlled reading plus overshoot_weight * overshoot.
/// Returns +infinity if the run fails or never reaches the phase.
double gains_objective(const engine::ScenarioConfig& scenario, TunePhase phase,
                       const control::PidGains& gains);

struct TuneResult {
  control::PidGains gains;
  double objective;
  double initial_objective;
  int evaluations;
};

/// Searches (kp, ki, kd) >= 0. Smoke tuning puts the smoke fan under PID.
/// Throws InvalidInput when budget < 1.
TuneResult tune_gains(const engine::ScenarioConfig& scenario, TunePhase phase,
                      const control::PidGains& initial, int budget);

}  // namespace smokehouse::tuner
