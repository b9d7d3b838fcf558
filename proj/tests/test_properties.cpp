#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support/property_checks.hpp"

namespace smokehouse {
namespace {

TEST(PidProperty, OutputAndIntegralBoundsUnderFuzz) {
  EXPECT_EQ(checks::pid_fuzz(10000), "");
}

TEST(PidProperty, PureProportionalIsClampedError) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double kp = 5.0 * unit(rng);
    control::PidConfig c;
    c.setpoint = 100.0 * unit(rng);
    const double m = 100.0 * unit(rng);
    control::PidState s;
    s.prev_measurement = 100.0 * unit(rng);
    s.initialized = unit(rng) < 0.5;
    const auto r = control::pid_step(s, {kp, 0.0, 0.0}, c, m, 1.0);
    ASSERT_EQ(r.output, std::clamp(kp * (c.setpoint - m), 0.0, 1.0));
  }
}

TEST(PidProperty, IdenticalSequencesIdenticalStates) {
  std::mt19937_64 a(99), b(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const control::PidGains g{0.4, 0.02, 0.3};
  const control::PidConfig c{85.0};
  control::PidState sa, sb;
  for (int k = 0; k < 1000; ++k) {
    const auto ra = control::pid_step(sa, g, c, 70.0 + 30.0 * unit(a), 1.0);
    const auto rb = control::pid_step(sb, g, c, 70.0 + 30.0 * unit(b), 1.0);
    ASSERT_EQ(ra.output, rb.output);
    ASSERT_EQ(ra.state.integral, rb.state.integral);
    sa = ra.state;
    sb = rb.state;
  }
}

TEST(PlantProperty, MaxPrincipleAndLyapunovDecay) {
  EXPECT_EQ(checks::plant_decay(1000), "");
}

TEST(PlantProperty, StepConvergesToEquilibrium) {
  for (auto p : plant::kAllPresets) {
    const auto cfg = plant::default_plant_config(p);
    EXPECT_LT(checks::equilibrium_gap(cfg, checks::sources_on(cfg, false)), 0.05);
    EXPECT_LT(checks::equilibrium_gap(cfg, checks::sources_on(cfg, true)), 0.05);
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rp = checks::random_plant(rng, true);
    EXPECT_LT(checks::equilibrium_gap(rp.config, rp.inputs), 0.05) << "trial " << trial;
  }
}

TEST(PlantProperty, HalvingStepBarelyMovesOneHourEndpoint) {
  for (auto p : plant::kAllPresets) {
    const auto cfg = plant::default_plant_config(p);
    EXPECT_LT(checks::half_step_drift(cfg, checks::sources_on(cfg, false)), 0.01);
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rp = checks::random_plant(rng, true);
    EXPECT_LT(checks::half_step_drift(rp.config, rp.inputs), 0.01) << "trial " << trial;
  }
}

TEST(PlantProperty, FanNeverWarmsVentedNode) {
  for (auto p : plant::kAllPresets) {
    const auto cfg = plant::default_plant_config(p);
    const auto base = checks::sources_on(cfg, false);
    for (const auto& c : cfg.conductances) {
      if (c.fan.empty()) continue;
      auto on = base;
      on[c.fan] = true;
      const auto t_off = plant::equilibrium_temps(cfg, base);
      const auto t_on = plant::equilibrium_temps(cfg, on);
      for (const auto& name : {c.node_a, c.node_b}) {
        if (name == plant::kAmbient) continue;
        EXPECT_LE(t_on.at(name), t_off.at(name) + 1e-12) << name;
      }
    }
  }
}

TEST(SequencerProperty, FaultLatchesSafeInEveryPhase) {
  EXPECT_EQ(checks::fault_injection_sweep(), "");
}

TEST(EngineProperty, ByteIdenticalTelemetryOnPresets) {
  for (auto p : plant::kAllPresets) {
    EXPECT_TRUE(engine::verify_determinism(engine::preset_scenario(p))) << plant::preset_name(p);
  }
}

}  // namespace
}  // namespace smokehouse
