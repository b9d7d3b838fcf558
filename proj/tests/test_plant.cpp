#include <cmath>

#include <gtest/gtest.h>

#include "smokehouse/errors.hpp"
#include "smokehouse/plant.hpp"

namespace smokehouse::plant {
namespace {

PlantConfig single_node(double c, double g, double p, double t0, double ambient) {
  PlantConfig cfg;
  cfg.ambient = ambient;
  cfg.nodes = {{"n", c, t0}};
  cfg.conductances = {{"n", "ambient", g, "", 1.0}};
  cfg.sources = {{"n", p, "heater"}};
  return cfg;
}

ActuatorInputs all(const PlantConfig& cfg, bool on) {
  ActuatorInputs in;
  for (const auto& id : referenced_actuators(cfg)) in[id] = on;
  return in;
}

TEST(PlantTest, SingleNodeMatchesClosedForm) {
  const double C = 800.0, G = 4.0, P = 300.0, T0 = 20.0, a = 15.0;
  const auto cfg = single_node(C, G, P, T0, a);
  const ThermalNetwork net(cfg);
  auto s = initial_state(cfg);
  const ActuatorInputs on{{"heater", true}};
  for (int k = 0; k < 6000; ++k) s = net.step(s, on, 0.1);
  const double t = 600.0;
  const double exact = a + P / G + (T0 - a - P / G) * std::exp(-G * t / C);
  EXPECT_NEAR(s.temperatures[0], exact, 1e-9);
  EXPECT_NEAR(s.time, t, 1e-9);
}

TEST(PlantTest, TwoNodeAgainstFineEulerOracle) {
  PlantConfig cfg;
  cfg.ambient = 20.0;
  cfg.nodes = {{"a", 500.0, 60.0}, {"b", 2000.0, 20.0}};
  cfg.conductances = {{"a", "b", 30.0, "", 1.0}, {"b", "ambient", 8.0, "", 1.0}};
  cfg.sources = {{"a", 400.0, "heater"}};
  const ActuatorInputs on{{"heater", true}};
  auto s = initial_state(cfg);
  for (int k = 0; k < 3000; ++k) s = plant_step(s, cfg, on, 0.1);

  double ta = 60.0, tb = 20.0;
  const double h = 1e-4;
  for (long k = 0; k < 3000000; ++k) {
    const double qab = 30.0 * (ta - tb);
    const double da = (400.0 - qab) / 500.0;
    const double db = (qab - 8.0 * (tb - 20.0)) / 2000.0;
    ta += h * da;
    tb += h * db;
  }
  EXPECT_NEAR(s.temperatures[0], ta, 2e-3);
  EXPECT_NEAR(s.temperatures[1], tb, 2e-3);
}

TEST(PlantTest, WrapperMatchesNetworkStep) {
  const auto cfg = default_plant_config(Preset::Milkfish);
  ActuatorInputs in = all(cfg, false);
  in["heater"] = true;
  const ThermalNetwork net(cfg);
  auto a = initial_state(cfg), b = a;
  for (int k = 0; k < 100; ++k) {
    a = net.step(a, in, 0.1);
    b = plant_step(b, cfg, in, 0.1);
  }
  EXPECT_EQ(a.temperatures, b.temperatures);
}

TEST(PlantTest, EquilibriumSolvesBalance) {
  const auto cfg = single_node(800.0, 4.0, 300.0, 20.0, 15.0);
  const auto eq = equilibrium_temps(cfg, {{"heater", true}});
  EXPECT_NEAR(eq.at("n"), 15.0 + 75.0, 1e-9);
  EXPECT_NEAR(equilibrium_temps(cfg, {{"heater", false}}).at("n"), 15.0, 1e-9);
}

TEST(PlantTest, FanBoostsConductance) {
  auto cfg = single_node(800.0, 4.0, 300.0, 20.0, 15.0);
  cfg.conductances[0].fan = "smoke_fan";
  cfg.conductances[0].fan_multiplier = 3.0;
  const auto off = equilibrium_temps(cfg, {{"heater", true}, {"smoke_fan", false}});
  const auto on = equilibrium_temps(cfg, {{"heater", true}, {"smoke_fan", true}});
  EXPECT_NEAR(off.at("n"), 90.0, 1e-9);
  EXPECT_NEAR(on.at("n"), 15.0 + 25.0, 1e-9);
}

TEST(PlantTest, FishLoadSlowsFishNode) {
  auto cfg = single_node(800.0, 4.0, 300.0, 20.0, 15.0);
  cfg.fish_node = "n";
  cfg.fish_thermal_load = 800.0;
  const ThermalNetwork net(cfg);
  EXPECT_DOUBLE_EQ(net.capacities()[0], 1600.0);
}

TEST(PlantTest, DivergenceDetected) {
  auto cfg = single_node(1.0, 0.001, 1e6, 20.0, 15.0);
  const ThermalNetwork net(cfg);
  auto s = initial_state(cfg);
  EXPECT_THROW(
      {
        for (int k = 0; k < 100; ++k) s = net.step(s, {{"heater", true}}, 0.1);
      },
      PlantDiverged);
}

TEST(PlantTest, StepRejectsBadInputs) {
  const auto cfg = single_node(800.0, 4.0, 300.0, 20.0, 15.0);
  const ThermalNetwork net(cfg);
  const auto s = initial_state(cfg);
  EXPECT_THROW(net.step(s, {{"heater", true}}, 0.0), InvalidInput);
  EXPECT_THROW(net.step(s, {{"heater", true}}, 1.5), InvalidInput);
  EXPECT_THROW(net.step(s, {}, 0.1), InvalidInput);
}

TEST(PlantTest, ValidationNamesTheNode) {
  auto cfg = single_node(800.0, 4.0, 300.0, 20.0, 15.0);
  cfg.nodes[0].heat_capacity = 0.0;
  const auto v = validate(cfg);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].path, "plant.nodes[0].heat_capacity");
  EXPECT_NE(v[0].message.find("'n'"), std::string::npos);
  EXPECT_THROW(ThermalNetwork{cfg}, ConfigError);
}

TEST(PlantTest, IsolatedNodeHasNoEquilibrium) {
  PlantConfig cfg;
  cfg.nodes = {{"a", 100.0, 20.0}, {"b", 100.0, 20.0}};
  cfg.conductances = {{"a", "ambient", 1.0, "", 1.0}};
  EXPECT_FALSE(validate(cfg).empty());
  EXPECT_THROW(equilibrium_temps(cfg, {}), NoEquilibrium);
}

TEST(PlantTest, PresetsShareTopology) {
  for (auto p : kAllPresets) {
    const auto cfg = default_plant_config(p);
    EXPECT_TRUE(validate(cfg).empty()) << preset_name(p);
    ASSERT_EQ(cfg.nodes.size(), 4u);
    EXPECT_EQ(cfg.nodes[0].name, "boiler_water");
    EXPECT_EQ(cfg.nodes[1].name, "cook_zone");
    EXPECT_EQ(cfg.nodes[2].name, "smoke_firebox");
    EXPECT_EQ(cfg.nodes[3].name, "smoke_path");
    EXPECT_EQ(preset_from_name(preset_name(p)), p);
  }
  EXPECT_THROW(preset_from_name("salmon"), InvalidInput);
}

TEST(PlantTest, CalibratedGradients) {
  auto cfg = default_plant_config(Preset::ScadLarge);
  cfg.ambient = 29.0;
  auto in = all(cfg, false);
  in["heater"] = true;
  auto eq = equilibrium_temps(cfg, in);
  EXPECT_NEAR(eq.at("boiler_water"), 99.7, 1.0);
  EXPECT_NEAR(eq.at("cook_zone"), 94.4, 1.5);
  in = all(cfg, false);
  in["combustion"] = true;
  eq = equilibrium_temps(cfg, in);
  EXPECT_NEAR(eq.at("smoke_firebox"), 75.0, 1.5);
  EXPECT_NEAR(eq.at("smoke_path"), 69.7, 1.5);
}

}  // namespace
}  // namespace smokehouse::plant
