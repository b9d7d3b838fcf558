#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "smokehouse/devices.hpp"
#include "smokehouse/errors.hpp"

namespace smokehouse::devices {
namespace {

TEST(SensorTest, QuantizesToSixteenths) {
  const SensorModel m;
  const auto r = sensor_sample(0.40, m, 0.0, {});
  EXPECT_TRUE(r.valid);
  EXPECT_DOUBLE_EQ(r.value, 0.375);
  EXPECT_DOUBLE_EQ(sensor_sample(85.03, m, 0.0, {}).value, 85.0);
  EXPECT_DOUBLE_EQ(sensor_sample(-10.1, m, 0.0, {}).value, -10.125);
}

TEST(SensorTest, HoldsBetweenConversions) {
  const SensorModel m;
  auto r = sensor_sample(50.0, m, 0.0, {});
  auto held = sensor_sample(60.0, m, 0.5, r);
  EXPECT_DOUBLE_EQ(held.value, 50.0);
  EXPECT_DOUBLE_EQ(held.sample_time, 0.0);
  auto fresh = sensor_sample(60.0, m, 0.75, r);
  EXPECT_DOUBLE_EQ(fresh.value, 60.0);
}

TEST(SensorTest, OutOfRangeIsInvalid) {
  const SensorModel m;
  EXPECT_FALSE(sensor_sample(130.0, m, 0.0, {}).valid);
  EXPECT_FALSE(sensor_sample(-60.0, m, 0.0, {}).valid);
  EXPECT_FALSE(sensor_sample(std::nan(""), m, 0.0, {}).valid);
}

TEST(SensorTest, NoiseIsSeeded) {
  SensorModel m;
  m.noise_sigma = 0.5;
  std::mt19937_64 a(7), b(7);
  for (int i = 0; i < 50; ++i) {
    const auto ra = sensor_sample(70.0, m, i, {}, &a);
    const auto rb = sensor_sample(70.0, m, i, {}, &b);
    EXPECT_EQ(ra.value, rb.value);
  }
}

TEST(SensorProperty, ReadingsAreMultiplesOfResolution) {
  SensorModel m;
  m.noise_sigma = 0.3;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> temp(-50.0, 120.0);
  for (int i = 0; i < 10000; ++i) {
    const auto r = sensor_sample(temp(rng), m, 0.0, {}, &rng);
    const double q = r.value / m.resolution;
    EXPECT_EQ(q, std::round(q));
  }
}

TEST(SensorProperty, AtMostOneChangePerConversionPeriod) {
  const SensorModel m;
  SensorReading r;
  double last_change = -1e9;
  double last_value = std::nan("");
  for (int k = 0; k < 2000; ++k) {
    const double t = k * 0.1;
    r = sensor_sample(20.0 + 0.37 * t, m, t, r);
    if (!(r.value == last_value)) {
      EXPECT_GE(t - last_change, m.conversion_period - 1e-9);
      last_change = t;
      last_value = r.value;
    }
  }
}

TEST(TrayTest, TraverseTime) {
  TrayActuator tray;
  const double expected = tray.travel / tray.belt_speed;  // about 3.82 s
  EXPECT_NEAR(expected, 3.8197, 1e-4);
  const double dt = 0.1;
  double t = 0.0;
  double prev = tray.position;
  while (tray.position < 1.0) {
    tray = tray_update(tray, TrayCommand::Lower, dt);
    t += dt;
    EXPECT_GE(tray.position, prev);
    prev = tray.position;
    ASSERT_LT(t, 100.0);
  }
  EXPECT_LE(std::abs(t - expected), dt);
  EXPECT_FALSE(tray.moving);
  EXPECT_EQ(tray_step_count(tray), std::lround(0.30 / (std::numbers::pi * 0.03) * 200));

  prev = tray.position;
  t = 0.0;
  while (tray.position > 0.0) {
    tray = tray_update(tray, TrayCommand::Raise, dt);
    t += dt;
    EXPECT_LE(tray.position, prev);
    prev = tray.position;
  }
  EXPECT_LE(std::abs(t - expected), dt);
  EXPECT_EQ(tray_step_count(tray), 0);
}

TEST(TrayTest, HoldStops) {
  TrayActuator tray;
  tray = tray_update(tray, TrayCommand::Lower, 1.0);
  EXPECT_TRUE(tray.moving);
  const double pos = tray.position;
  tray = tray_update(tray, TrayCommand::Hold, 1.0);
  EXPECT_FALSE(tray.moving);
  EXPECT_DOUBLE_EQ(tray.position, pos);
}

plant::PlantConfig tiny_plant() {
  plant::PlantConfig cfg;
  cfg.nodes = {{"w", 100.0, 20.0}};
  cfg.conductances = {{"w", "ambient", 1.0, "boiler_fans", 2.0}};
  cfg.sources = {{"w", 10.0, "heater"}, {"w", 5.0, "combustion"}};
  return cfg;
}

TEST(ActuatorTest, IgniterLatchesCombustion) {
  const auto cfg = tiny_plant();
  CombustionLatch latch;
  latch.burn_duration = 100.0;
  ActuatorBank bank;
  EXPECT_FALSE(apply_actuators(bank, latch, 0.0, cfg).at("combustion"));
  bank.igniter = true;
  EXPECT_TRUE(apply_actuators(bank, latch, 10.0, cfg).at("combustion"));
  bank.igniter = false;
  EXPECT_TRUE(apply_actuators(bank, latch, 109.9, cfg).at("combustion"));
  EXPECT_FALSE(apply_actuators(bank, latch, 110.0, cfg).at("combustion"));
  // a later pulse does not relight a spent charge
  bank.igniter = true;
  EXPECT_FALSE(apply_actuators(bank, latch, 200.0, cfg).at("combustion"));
}

TEST(ActuatorTest, BoilerFansAreGanged) {
  const auto cfg = tiny_plant();
  CombustionLatch latch;
  ActuatorBank bank;
  bank.boiler_fans = {true, true, true, false};
  auto in = apply_actuators(bank, latch, 0.0, cfg);
  EXPECT_FALSE(in.at("boiler_fans"));
  EXPECT_TRUE(in.at("boiler_fan_1"));
  EXPECT_TRUE(bank.any_boiler_fan());
  bank.set_boiler_fans(true);
  EXPECT_TRUE(apply_actuators(bank, latch, 0.0, cfg).at("boiler_fans"));
}

TEST(ActuatorTest, UndeclaredActuatorRejected) {
  auto cfg = tiny_plant();
  cfg.sources[0].driven_by = "laser";
  CombustionLatch latch;
  EXPECT_THROW(apply_actuators({}, latch, 0.0, cfg), ConfigError);
  const auto v = validate_actuator_references(cfg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "plant.sources[0].driven_by");
}

TEST(ActuatorProperty, DeterministicAndStateless) {
  const auto cfg = tiny_plant();
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 500; ++i) {
    ActuatorBank bank;
    bank.heater = coin(rng);
    bank.smoke_fan = coin(rng);
    for (auto& f : bank.boiler_fans) f = coin(rng);
    const ActuatorBank copy = bank;
    CombustionLatch l1, l2;
    const auto a = apply_actuators(bank, l1, i, cfg);
    const auto b = apply_actuators(bank, l2, i, cfg);
    EXPECT_EQ(a, b);
    EXPECT_EQ(bank.heater, copy.heater);
    EXPECT_FALSE(l1.lit_at.has_value());
  }
}

}  // namespace
}  // namespace smokehouse::devices
