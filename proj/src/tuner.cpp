#include "smokehouse/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace smokehouse::tuner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, std::vector<double> steps,
                             const NelderMeadOptions& options) {
  if (options.max_evaluations < 1) throw InvalidInput("nelder_mead: budget must be >= 1");
  if (steps.size() != start.size()) throw InvalidInput("nelder_mead: steps/start size mismatch");
  const std::size_t n = start.size();

  int evals = 0;
  auto f = [&](const std::vector<double>& x) {
    ++evals;
    const double v = objective(x);
    return std::isfinite(v) ? v : kInf;
  };
  auto budget_left = [&] { return evals < options.max_evaluations; };

  std::vector<std::vector<double>> simplex{start};
  std::vector<double> values{f(start)};
  for (std::size_t i = 0; i < n && budget_left(); ++i) {
    auto v = start;
    v[i] += steps[i];
    values.push_back(f(v));
    simplex.push_back(std::move(v));
  }

  auto best = [&] {
    const auto it = std::min_element(values.begin(), values.end());
    const auto i = static_cast<std::size_t>(it - values.begin());
    return NelderMeadResult{simplex[i], values[i], evals};
  };
  if (simplex.size() < n + 1) return best();

  std::vector<std::size_t> order(n + 1);
  while (budget_left()) {
    std::iota(order.begin(), order.end(), 0);
    // Stable on ties so the search is reproducible.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
    if (std::isfinite(values[hi]) && values[hi] - values[lo] <= options.tolerance) {
      double spread = 0.0;
      for (const auto& v : simplex) {
        for (std::size_t k = 0; k < n; ++k) spread = std::max(spread, std::abs(v[k] - simplex[lo][k]));
      }
      if (spread <= options.x_tolerance) break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / double(n);
    }
    auto along = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + coef * (simplex[hi][i] - centroid[i]);
      return p;
    };

    auto reflected = along(-options.reflection);
    const double fr = f(reflected);
    if (fr < values[lo]) {
      if (!budget_left()) {
        simplex[hi] = std::move(reflected);
        values[hi] = fr;
        break;
      }
      auto expanded = along(-options.reflection * options.expansion);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[hi] = std::move(expanded);
        values[hi] = fe;
      } else {
        simplex[hi] = std::move(reflected);
        values[hi] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[hi] = std::move(reflected);
      values[hi] = fr;
      continue;
    }
    if (!budget_left()) break;
    const bool outside = fr < values[hi];
    auto contracted = along(outside ? -options.reflection * options.contraction : options.contraction);
    const double fc = f(contracted);
    if (fc < std::min(fr, values[hi])) {
      simplex[hi] = std::move(contracted);
      values[hi] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t k = 1; k <= n && budget_left(); ++k) {
      const std::size_t idx = order[k];
      for (std::size_t i = 0; i < n; ++i) {
        simplex[idx][i] = simplex[lo][i] + options.shrink * (simplex[idx][i] - simplex[lo][i]);
      }
      values[idx] = f(simplex[idx]);
    }
  }
  return best();
}

double gains_objective(const engine::ScenarioConfig& scenario, TunePhase phase,
                       const control::PidGains& gains) {
  auto cfg = scenario;
  sequencer::Phase target;
  if (phase == TunePhase::Cook) {
    cfg.gains.cook = gains;
    target = sequencer::Phase::Cook;
  } else {
    cfg.gains.smoke = gains;
    cfg.control.fan_mode = engine::FanMode::Pid;
    target = sequencer::Phase::Smoke;
  }
  try {
    const auto run = engine::run_scenario(cfg, {.stop_after = target});
    const auto& reg = phase == TunePhase::Cook ? run.summary.cook : run.summary.smoke;
    if (!reg || run.summary.terminal == sequencer::Phase::Fault) return kInf;
    return reg->iae + cfg.control.overshoot_weight * reg->overshoot;
  } catch (const std::exception&) {
    return kInf;
  }
}

TuneResult tune_gains(const engine::ScenarioConfig& scenario, TunePhase phase,
                      const control::PidGains& initial, int budget) {
  if (budget < 1) throw InvalidInput("tune_gains: budget must be >= 1");

  auto to_gains = [](std::span<const double> x) {
    // Search space is unconstrained; project onto the non-negative orthant.
    return control::PidGains{std::max(0.0, x[0]), std::max(0.0, x[1]), std::max(0.0, x[2])};
  };
  std::optional<double> initial_value;
  auto objective = [&](std::span<const double> x) {
    const double v = gains_objective(scenario, phase, to_gains(x));
    // The first evaluation is always the start point.
    if (!initial_value) initial_value = v;
    return v;
  };

  const std::vector<double> start{initial.kp, initial.ki, initial.kd};
  std::vector<double> steps;
  const double floor_step[] = {0.1, 0.002, 0.5};
  for (std::size_t i = 0; i < 3; ++i) steps.push_back(std::max(0.5 * start[i], floor_step[i]));

  NelderMeadOptions opts;
  opts.max_evaluations = budget;
  const auto r = nelder_mead(objective, start, steps, opts);
  return {to_gains(r.x), r.value, *initial_value, r.evaluations};
}

}  // namespace smokehouse::tuner
