#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "smokehouse/errors.hpp"
#include "smokehouse/tuner.hpp"

namespace smokehouse::tuner {
namespace {

TEST(NelderMeadTest, MinimizesQuadratic) {
  auto f = [](std::span<const double> x) {
    return (x[0] - 3.0) * (x[0] - 3.0) + 10.0 * (x[1] + 1.0) * (x[1] + 1.0);
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 400;
  opt.tolerance = 1e-14;
  const auto r = nelder_mead(f, {0.0, 0.0}, {1.0, 1.0}, opt);
  EXPECT_NEAR(r.x[0], 3.0, 1e-4);
  EXPECT_NEAR(r.x[1], -1.0, 1e-4);
  EXPECT_LE(r.evaluations, 400);
}

TEST(NelderMeadTest, Rosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 2000;
  opt.tolerance = 1e-16;
  const auto r = nelder_mead(f, {-1.2, 1.0}, {0.5, 0.5}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], 1.0, 2e-3);
}

TEST(NelderMeadTest, BudgetOfOneReturnsStart) {
  int calls = 0;
  auto f = [&calls](std::span<const double> x) {
    ++calls;
    return x[0] * x[0];
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 1;
  const auto r = nelder_mead(f, {2.0}, {1.0}, opt);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(r.evaluations, 1);
  EXPECT_DOUBLE_EQ(r.x[0], 2.0);
  EXPECT_DOUBLE_EQ(r.value, 4.0);
}

TEST(NelderMeadTest, NonFiniteTreatedAsWorst) {
  auto f = [](std::span<const double> x) {
    return x[0] < 0.0 ? std::numeric_limits<double>::quiet_NaN() : (x[0] - 1.0) * (x[0] - 1.0);
  };
  const auto r = nelder_mead(f, {0.5}, {1.0});
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
}

TEST(TunerTest, DefaultGainsHaveFiniteObjective) {
  const auto cfg = engine::default_scenario();
  EXPECT_TRUE(std::isfinite(gains_objective(cfg, TunePhase::Cook, cfg.gains.cook)));
  EXPECT_TRUE(std::isfinite(gains_objective(cfg, TunePhase::Smoke, cfg.gains.smoke)));
}

TEST(TunerTest, NeverWorseThanStart) {
  const auto cfg = engine::preset_scenario(plant::Preset::Tilapia);
  const auto r = tune_gains(cfg, TunePhase::Cook, cfg.gains.cook, 8);
  EXPECT_EQ(r.evaluations, 8);
  EXPECT_LE(r.objective, r.initial_objective);
  EXPECT_DOUBLE_EQ(r.initial_objective, gains_objective(cfg, TunePhase::Cook, cfg.gains.cook));
  EXPECT_GE(r.gains.kp, 0.0);
  EXPECT_GE(r.gains.ki, 0.0);
  EXPECT_GE(r.gains.kd, 0.0);
}

TEST(TunerTest, RejectsEmptyBudget) {
  const auto cfg = engine::default_scenario();
  EXPECT_THROW(tune_gains(cfg, TunePhase::Cook, cfg.gains.cook, 0), InvalidInput);
}

}  // namespace
}  // namespace smokehouse::tuner
