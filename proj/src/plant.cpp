#include "smokehouse/plant.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace smokehouse::plant {

std::optional<std::size_t> PlantConfig::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<Violation> validate(const PlantConfig& config, std::string_view prefix) {
  std::vector<Violation> out;
  const std::string p(prefix);
  auto add = [&out](std::string path, std::string msg) {
    out.push_back({std::move(path), std::move(msg)});
  };

  if (config.nodes.empty()) add(p + ".nodes", "at least one node is required");
  if (!std::isfinite(config.ambient)) add(p + ".ambient", "must be finite");
  if (!(config.fish_thermal_load >= 0.0)) add(p + ".fish_thermal_load", "must be >= 0");

  std::set<std::string> names;
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    const auto& n = config.nodes[i];
    const auto path = fmt::format("{}.nodes[{}]", p, i);
    if (n.name.empty() || n.name == kAmbient) {
      add(path + ".name", "node name must be non-empty and not 'ambient'");
    } else if (!names.insert(n.name).second) {
      add(path + ".name", fmt::format("duplicate node name '{}'", n.name));
    }
    if (!(n.heat_capacity > 0.0) || !std::isfinite(n.heat_capacity)) {
      add(path + ".heat_capacity",
          fmt::format("node '{}': heat capacity must be > 0 (got {})", n.name, n.heat_capacity));
    }
    if (!std::isfinite(n.temperature) || std::abs(n.temperature) > kGuardBand) {
      add(path + ".temperature", fmt::format("node '{}': temperature outside guard band", n.name));
    }
  }
  if (config.fish_thermal_load > 0.0 && !names.contains(config.fish_node)) {
    add(p + ".fish_node", fmt::format("unknown node '{}'", config.fish_node));
  }

  auto known = [&](const std::string& n) { return n == kAmbient || names.contains(n); };
  for (std::size_t i = 0; i < config.conductances.size(); ++i) {
    const auto& c = config.conductances[i];
    const auto path = fmt::format("{}.conductances[{}]", p, i);
    if (!known(c.node_a)) add(path + ".node_a", fmt::format("unknown node '{}'", c.node_a));
    if (!known(c.node_b)) add(path + ".node_b", fmt::format("unknown node '{}'", c.node_b));
    if (c.node_a == c.node_b) add(path, "endpoints must be distinct");
    if (c.node_a == kAmbient && c.node_b == kAmbient) add(path, "both endpoints are ambient");
    if (!(c.value > 0.0) || !std::isfinite(c.value)) add(path + ".value", "must be > 0");
    if (!(c.fan_multiplier >= 1.0) || !std::isfinite(c.fan_multiplier)) {
      add(path + ".fan_multiplier", "must be >= 1");
    }
  }
  for (std::size_t i = 0; i < config.sources.size(); ++i) {
    const auto& s = config.sources[i];
    const auto path = fmt::format("{}.sources[{}]", p, i);
    if (!names.contains(s.node)) add(path + ".node", fmt::format("unknown node '{}'", s.node));
    if (!(s.power >= 0.0) || !std::isfinite(s.power)) add(path + ".power", "must be >= 0");
    if (s.driven_by.empty()) add(path + ".driven_by", "actuator id required");
  }

  // Every node must reach ambient, otherwise there is no steady state.
  if (out.empty()) {
    std::set<std::string> reached{std::string(kAmbient)};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& c : config.conductances) {
        const bool a = reached.contains(c.node_a);
        const bool b = reached.contains(c.node_b);
        if (a != b) {
          reached.insert(a ? c.node_b : c.node_a);
          grew = true;
        }
      }
    }
    for (std::size_t i = 0; i < config.nodes.size(); ++i) {
      if (!reached.contains(config.nodes[i].name)) {
        add(fmt::format("{}.nodes[{}]", p, i),
            fmt::format("node '{}' has no conductance path to ambient", config.nodes[i].name));
      }
    }
  }
  return out;
}

std::vector<std::string> referenced_actuators(const PlantConfig& config) {
  std::set<std::string> ids;
  for (const auto& s : config.sources) ids.insert(s.driven_by);
  for (const auto& c : config.conductances) {
    if (!c.fan.empty()) ids.insert(c.fan);
  }
  return {ids.begin(), ids.end()};
}

PlantState initial_state(const PlantConfig& config) {
  PlantState s;
  s.temperatures.reserve(config.nodes.size());
  for (const auto& n : config.nodes) s.temperatures.push_back(n.temperature);
  return s;
}

ThermalNetwork::ThermalNetwork(const PlantConfig& config) : ambient_(config.ambient) {
  if (auto v = validate(config); !v.empty()) throw ConfigError(std::move(v));
  for (const auto& n : config.nodes) {
    capacity_.push_back(n.heat_capacity +
                        (n.name == config.fish_node ? config.fish_thermal_load : 0.0));
    names_.push_back(n.name);
  }
  auto resolve = [&](const std::string& name) -> std::optional<std::size_t> {
    if (name == kAmbient) return std::nullopt;
    return config.index_of(name);
  };
  for (const auto& c : config.conductances) {
    auto a = resolve(c.node_a);
    auto b = resolve(c.node_b);
    if (!a) std::swap(a, b);
    edges_.push_back({*a, b, c.value, c.fan, c.fan_multiplier});
  }
  for (const auto& s : config.sources) {
    sources_.push_back({*config.index_of(s.node), s.power, s.driven_by});
  }
}

ThermalNetwork::Gated ThermalNetwork::gate(const ActuatorInputs& inputs) const {
  auto lookup = [&inputs](const std::string& id) {
    const auto it = inputs.find(id);
    if (it == inputs.end()) throw InvalidInput(fmt::format("no input for actuator '{}'", id));
    return it->second;
  };
  Gated g;
  g.edge_values.reserve(edges_.size());
  for (const auto& e : edges_) {
    const bool boosted = !e.fan.empty() && lookup(e.fan);
    g.edge_values.push_back(boosted ? e.value * e.fan_multiplier : e.value);
  }
  g.node_power.assign(capacity_.size(), 0.0);
  for (const auto& s : sources_) {
    if (lookup(s.actuator)) g.node_power[s.node] += s.power;
  }
  return g;
}

void ThermalNetwork::derivative(const Gated& g, const std::vector<double>& t,
                                std::vector<double>& out) const {
  out = g.node_power;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    const double other = e.b ? t[*e.b] : ambient_;
    const double flow = g.edge_values[k] * (other - t[e.a]);
    out[e.a] += flow;
    if (e.b) out[*e.b] -= flow;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= capacity_[i];
}

PlantState ThermalNetwork::step(const PlantState& state, const ActuatorInputs& inputs,
                                double dt) const {
  if (!(dt > 0.0 && dt <= 1.0)) throw InvalidInput("plant_step: dt must be in (0, 1] s");
  if (state.temperatures.size() != size()) throw InvalidInput("plant_step: state size mismatch");

  const auto g = gate(inputs);
  const std::size_t n = size();
  const auto& y = state.temperatures;
  std::vector<double> k1, k2, k3, k4, tmp(n);

  derivative(g, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  derivative(g, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  derivative(g, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
  derivative(g, tmp, k4);

  PlantState next;
  next.time = state.time + dt;
  next.temperatures.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(v) || std::abs(v) > kGuardBand) {
      throw PlantDiverged(fmt::format("node '{}' diverged to {} degC at t={} s", names_[i], v,
                                      next.time));
    }
    next.temperatures[i] = v;
  }
  return next;
}

std::vector<double> ThermalNetwork::equilibrium(const ActuatorInputs& inputs) const {
  const auto g = gate(inputs);
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = g.node_power[static_cast<std::size_t>(i)];
  // Sum_j G_ij (T_j - T_i) + Q_i = 0, ambient terms moved to the right-hand side.
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    const double v = g.edge_values[k];
    const auto ia = static_cast<Eigen::Index>(e.a);
    a(ia, ia) += v;
    if (e.b) {
      const auto ib = static_cast<Eigen::Index>(*e.b);
      a(ib, ib) += v;
      a(ia, ib) -= v;
      a(ib, ia) -= v;
    } else {
      rhs(ia) += v * ambient_;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw NoEquilibrium("thermal network has no unique steady state");
  const Eigen::VectorXd t = lu.solve(rhs);
  return {t.data(), t.data() + t.size()};
}

PlantState plant_step(const PlantState& state, const PlantConfig& config,
                      const ActuatorInputs& inputs, double dt) {
  return ThermalNetwork(config).step(state, inputs, dt);
}

std::map<std::string, double> equilibrium_temps(const PlantConfig& config,
                                                const ActuatorInputs& inputs) {
  // Structural problems that make the system singular surface as NoEquilibrium.
  for (const auto& v : validate(config)) {
    if (v.message.find("no conductance path") != std::string::npos) {
      throw NoEquilibrium(v.message);
    }
  }
  const ThermalNetwork net(config);
  const auto t = net.equilibrium(inputs);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < t.size(); ++i) out[config.nodes[i].name] = t[i];
  return out;
}

namespace {

struct PresetData {
  Preset preset;
  std::string_view name;
  double initial_temp;
  double fish_load;
};

// Initial temperatures are the measured starting readings per batch; fish
// loads are calibrated so the boil phase length reproduces each batch's
// total process time.
constexpr PresetData kPresets[] = {
    {Preset::ScadLarge, "scad_large", 29.76, 1650.0},
    {Preset::ScadMedium, "scad_medium", 28.17, 0.0},
    {Preset::Milkfish, "milkfish", 29.76, 4200.0},
    {Preset::Tilapia, "tilapia", 28.92, 200.0},
};

const PresetData& data_for(Preset preset) {
  for (const auto& d : kPresets) {
    if (d.preset == preset) return d;
  }
  throw InvalidInput("unknown preset");
}

}  // namespace

std::string_view preset_name(Preset preset) { return data_for(preset).name; }

Preset preset_from_name(std::string_view name) {
  for (const auto& d : kPresets) {
    if (d.name == name) return d.preset;
  }
  throw InvalidInput(fmt::format(
      "unknown preset '{}' (expected scad_large, scad_medium, milkfish or tilapia)", name));
}

PlantConfig default_plant_config(Preset preset) {
  const auto& d = data_for(preset);
  PlantConfig c;
  c.ambient = d.initial_temp;
  c.fish_thermal_load = d.fish_load;
  c.fish_node = "cook_zone";
  c.nodes = {
      {"boiler_water", 1000.0, d.initial_temp},
      {"cook_zone", 500.0, d.initial_temp},
      {"smoke_firebox", 3000.0, d.initial_temp},
      {"smoke_path", 1500.0, d.initial_temp},
  };
  // Heater-on steady state at 29 degC ambient: water 99.7, cook zone 94.4.
  // Combustion-on steady state: firebox 75.0, smoke path 69.7.
  c.conductances = {
      {"boiler_water", "ambient", 5.658, "", 1.0},
      {"boiler_water", "cook_zone", 301.9, "", 1.0},
      {"cook_zone", "ambient", 24.465, "boiler_fans", 3.0},
      {"smoke_firebox", "smoke_path", 56.60, "", 1.0},
      {"smoke_firebox", "ambient", 10.870, "smoke_fan", 3.0},
      {"smoke_path", "ambient", 7.371, "", 1.0},
  };
  c.sources = {
      {"boiler_water", 2000.0, "heater"},
      {"smoke_firebox", 800.0, "combustion"},
  };
  return c;
}

}  // namespace smokehouse::plant
