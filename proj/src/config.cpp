#include "smokehouse/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace smokehouse::config {

using engine::ScenarioConfig;

namespace {

[[noreturn]] void fail(std::string path, std::string message) {
  throw ConfigError(std::vector<Violation>{{std::move(path), std::move(message)}});
}

// Reads fields out of one JSON object, remembering which keys were used so
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_, "expected an object");
  }

  ~ObjectReader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : obj_.items()) {
      if (!used_.contains(key)) fail(child(key), "unknown key");
    }
  }

  std::string child(std::string_view key) const {
    return path_.empty() ? std::string(key) : fmt::format("{}.{}", path_, key);
  }

  const json* find(std::string_view key) {
    used_.insert(std::string(key));
    const auto it = obj_.find(std::string(key));
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(std::string_view key, double& out) {
    if (const auto* v = find(key)) {
      if (!v->is_number()) fail(child(key), "expected a number");
      out = v->get<double>();
    }
  }

  template <typename Int>
  void integer(std::string_view key, Int& out) {
    if (const auto* v = find(key)) {
      if (!v->is_number_integer()) fail(child(key), "expected an integer");
      out = v->get<Int>();
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const auto* v = find(key)) {
      if (!v->is_string()) fail(child(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  template <typename Fn>
  void object(std::string_view key, Fn&& fn) {
    if (const auto* v = find(key)) {
      ObjectReader sub(*v, child(key));
      fn(sub);
    }
  }

  /// Arrays replace the base wholesale.
  template <typename T, typename Fn>
  void array(std::string_view key, std::vector<T>& out, Fn&& fn) {
    if (const auto* v = find(key)) {
      if (!v->is_array()) fail(child(key), "expected an array");
      std::vector<T> items;
      for (std::size_t i = 0; i < v->size(); ++i) {
        T item{};
        ObjectReader sub((*v)[i], fmt::format("{}[{}]", child(key), i));
        fn(sub, item);
        items.push_back(std::move(item));
      }
      out = std::move(items);
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

json gains_json(const control::PidGains& g) { return {{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}}; }

void read_gains(ObjectReader& r, control::PidGains& g) {
  r.number("kp", g.kp);
  r.number("ki", g.ki);
  r.number("kd", g.kd);
}

json pulley_json(const mechanics::PulleySpec& p) {
  return {{"diameter", p.diameter_m}, {"speed_rpm", p.speed_rpm}, {"teeth", p.teeth}};
}

void read_pulley(ObjectReader& r, mechanics::PulleySpec& p) {
  r.number("diameter", p.diameter_m);
  r.number("speed_rpm", p.speed_rpm);
  r.integer("teeth", p.teeth);
}

std::string_view fan_mode_name(engine::FanMode m) {
  return m == engine::FanMode::Pid ? "pid" : "hysteresis";
}

}  // namespace

json to_json(const ScenarioConfig& c) {
  json nodes = json::array();
  for (const auto& n : c.plant.nodes) {
    nodes.push_back({{"name", n.name}, {"heat_capacity", n.heat_capacity}, {"temperature", n.temperature}});
  }
  json conductances = json::array();
  for (const auto& g : c.plant.conductances) {
    conductances.push_back({{"node_a", g.node_a},
                            {"node_b", g.node_b},
                            {"value", g.value},
                            {"fan", g.fan},
                            {"fan_multiplier", g.fan_multiplier}});
  }
  json sources = json::array();
  for (const auto& s : c.plant.sources) {
    sources.push_back({{"node", s.node}, {"power", s.power}, {"driven_by", s.driven_by}});
  }
  json sensors = json::array();
  for (const auto& b : c.devices.sensors) sensors.push_back({{"name", b.name}, {"node", b.node}});

  const auto& p = c.plan;
  const auto& t = c.devices.tray;
  const auto& m = c.mechanics;
  return json{
      {"preset", c.preset_name},
      {"seed", c.seed},
      {"steps", {{"plant_dt", c.steps.plant_dt}, {"control_dt", c.steps.control_dt}}},
      {"plant",
       {{"ambient", c.plant.ambient},
        {"fish_thermal_load", c.plant.fish_thermal_load},
        {"fish_node", c.plant.fish_node},
        {"nodes", nodes},
        {"conductances", conductances},
        {"sources", sources}}},
      {"plan",
       {{"boil_max", p.boil_max},
        {"cook", p.cook},
        {"smoke", p.smoke},
        {"dry", p.dry},
        {"boil_target", p.boil_target},
        {"cook_setpoint", p.cook_setpoint},
        {"smoke_setpoint", p.smoke_setpoint},
        {"cook_band", {p.cook_band.low, p.cook_band.high}},
        {"smoke_band", {p.smoke_band.low, p.smoke_band.high}},
        {"overtemp_limit", p.overtemp_limit},
        {"ignite_pulse", p.ignite_pulse},
        {"stuck_timeout", p.stuck_timeout},
        {"stuck_min_duty", p.stuck_min_duty}}},
      {"gains", {{"cook", gains_json(c.gains.cook)}, {"smoke", gains_json(c.gains.smoke)}}},
      {"control",
       {{"relay_window", c.control.relay_window},
        {"fan_hysteresis", c.control.fan_hysteresis},
        {"fan_mode", fan_mode_name(c.control.fan_mode)},
        {"windup_limit", c.control.windup_limit},
        {"overshoot_weight", c.control.overshoot_weight}}},
      {"devices",
       {{"sensor",
         {{"resolution", c.devices.sensor.resolution},
          {"conversion_period", c.devices.sensor.conversion_period},
          {"noise_sigma", c.devices.sensor.noise_sigma},
          {"range_min", c.devices.sensor.range_min},
          {"range_max", c.devices.sensor.range_max}}},
        {"sensors", sensors},
        {"tray",
         {{"steps_per_rev", t.steps_per_rev},
          {"driver_pulley_diameter", t.driver_pulley_diameter},
          {"belt_speed", t.belt_speed},
          {"travel", t.travel},
          {"position", t.position}}},
        {"burn_duration", c.devices.burn_duration}}},
      {"mechanics",
       {{"mass", m.load.mass_kg},
        {"gravity", m.load.gravity_mps2},
        {"pulley_count", m.load.pulley_count},
        {"driver", pulley_json(m.drive.driver)},
        {"driven", pulley_json(m.drive.driven)},
        {"center_distance", m.drive.center_distance_m},
        {"tension", m.drive.tension_N}}},
  };
}

ScenarioConfig from_json(const json& doc, ScenarioConfig c) {
  ObjectReader root(doc, "");
  root.string("preset", c.preset_name);
  root.integer("seed", c.seed);
  root.object("steps", [&](ObjectReader& r) {
    r.number("plant_dt", c.steps.plant_dt);
    r.number("control_dt", c.steps.control_dt);
  });
  root.object("plant", [&](ObjectReader& r) {
    r.number("ambient", c.plant.ambient);
    r.number("fish_thermal_load", c.plant.fish_thermal_load);
    r.string("fish_node", c.plant.fish_node);
    r.array("nodes", c.plant.nodes, [](ObjectReader& n, plant::ThermalNode& node) {
      n.string("name", node.name);
      n.number("heat_capacity", node.heat_capacity);
      n.number("temperature", node.temperature);
    });
    r.array("conductances", c.plant.conductances, [](ObjectReader& n, plant::Conductance& g) {
      g.fan_multiplier = 1.0;
      n.string("node_a", g.node_a);
      n.string("node_b", g.node_b);
      n.number("value", g.value);
      n.string("fan", g.fan);
      n.number("fan_multiplier", g.fan_multiplier);
    });
    r.array("sources", c.plant.sources, [](ObjectReader& n, plant::HeatSource& s) {
      n.string("node", s.node);
      n.number("power", s.power);
      n.string("driven_by", s.driven_by);
    });
  });
  root.object("plan", [&](ObjectReader& r) {
    auto& p = c.plan;
    r.number("boil_max", p.boil_max);
    r.number("cook", p.cook);
    r.number("smoke", p.smoke);
    r.number("dry", p.dry);
    r.number("boil_target", p.boil_target);
    r.number("cook_setpoint", p.cook_setpoint);
    r.number("smoke_setpoint", p.smoke_setpoint);
    auto band = [&](std::string_view key, sequencer::Band& b) {
      if (const auto* v = r.find(key)) {
        if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
          fail(r.child(key), "expected [low, high]");
        }
        b = {(*v)[0].get<double>(), (*v)[1].get<double>()};
      }
    };
    band("cook_band", p.cook_band);
    band("smoke_band", p.smoke_band);
    r.number("overtemp_limit", p.overtemp_limit);
    r.number("ignite_pulse", p.ignite_pulse);
    r.number("stuck_timeout", p.stuck_timeout);
    r.number("stuck_min_duty", p.stuck_min_duty);
  });
  root.object("gains", [&](ObjectReader& r) {
    r.object("cook", [&](ObjectReader& g) { read_gains(g, c.gains.cook); });
    r.object("smoke", [&](ObjectReader& g) { read_gains(g, c.gains.smoke); });
  });
  root.object("control", [&](ObjectReader& r) {
    r.number("relay_window", c.control.relay_window);
    r.number("fan_hysteresis", c.control.fan_hysteresis);
    std::string mode(fan_mode_name(c.control.fan_mode));
    r.string("fan_mode", mode);
    if (mode == "pid") {
      c.control.fan_mode = engine::FanMode::Pid;
    } else if (mode == "hysteresis") {
      c.control.fan_mode = engine::FanMode::Hysteresis;
    } else {
      fail(r.child("fan_mode"), fmt::format("'{}' is not one of hysteresis, pid", mode));
    }
    r.number("windup_limit", c.control.windup_limit);
    r.number("overshoot_weight", c.control.overshoot_weight);
  });
  root.object("devices", [&](ObjectReader& r) {
    r.object("sensor", [&](ObjectReader& s) {
      s.number("resolution", c.devices.sensor.resolution);
      s.number("conversion_period", c.devices.sensor.conversion_period);
      s.number("noise_sigma", c.devices.sensor.noise_sigma);
      s.number("range_min", c.devices.sensor.range_min);
      s.number("range_max", c.devices.sensor.range_max);
    });
    r.array("sensors", c.devices.sensors, [](ObjectReader& s, engine::SensorBinding& b) {
      s.string("name", b.name);
      s.string("node", b.node);
    });
    r.object("tray", [&](ObjectReader& t) {
      auto& tray = c.devices.tray;
      t.integer("steps_per_rev", tray.steps_per_rev);
      t.number("driver_pulley_diameter", tray.driver_pulley_diameter);
      t.number("belt_speed", tray.belt_speed);
      t.number("travel", tray.travel);
      t.number("position", tray.position);
    });
    r.number("burn_duration", c.devices.burn_duration);
  });
  root.object("mechanics", [&](ObjectReader& r) {
    auto& m = c.mechanics;
    r.number("mass", m.load.mass_kg);
    r.number("gravity", m.load.gravity_mps2);
    r.integer("pulley_count", m.load.pulley_count);
    r.object("driver", [&](ObjectReader& p) { read_pulley(p, m.drive.driver); });
    r.object("driven", [&](ObjectReader& p) { read_pulley(p, m.drive.driven); });
    r.number("center_distance", m.drive.center_distance_m);
    r.number("tension", m.drive.tension_N);
  });
  return c;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    fail(std::string(assignment), "override must look like key=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  json* node = &doc;
  std::string seen;
  std::istringstream parts(path);
  std::string part;
  while (std::getline(parts, part, '.')) {
    seen = seen.empty() ? part : seen + "." + part;
    if (node->is_object()) {
      auto it = node->find(part);
      if (it == node->end()) fail(path, fmt::format("unknown setting '{}'", seen));
      node = &*it;
    } else if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        fail(path, fmt::format("'{}' is not an array index", seen));
      }
      if (idx >= node->size()) fail(path, fmt::format("index out of range at '{}'", seen));
      node = &(*node)[idx];
    } else {
      fail(path, fmt::format("'{}' is not an object or array", seen));
    }
  }
  if (node->is_object()) fail(path, "cannot assign to a section");

  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  *node = std::move(value);
}

json parse_json(std::string_view text, std::string_view origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError(fmt::format("{}:{}:{}: {}", origin, line, col, msg));
  }
}

namespace {

ScenarioConfig apply_overrides(const ScenarioConfig& base, std::span<const std::string> overrides) {
  if (overrides.empty()) return base;
  json doc = to_json(base);
  for (const auto& o : overrides) apply_override(doc, o);
  return from_json(doc, base);
}

ScenarioConfig base_for(std::string_view preset) {
  try {
    return engine::preset_scenario(plant::preset_from_name(preset));
  } catch (const InvalidInput& e) {
    fail("preset", e.what());
  }
}

}  // namespace

ScenarioConfig load_scenario(std::string_view text, std::string_view origin,
                             std::span<const std::string> overrides) {
  const json doc = parse_json(text, origin);
  if (!doc.is_object()) fail("", "top level must be an object");
  std::string preset = "scad_large";
  if (auto it = doc.find("preset"); it != doc.end()) {
    if (!it->is_string()) fail("preset", "expected a string");
    preset = it->get<std::string>();
  }
  const auto layered = from_json(doc, base_for(preset));
  return apply_overrides(layered, overrides);
}

ScenarioConfig preset_with_overrides(std::string_view preset,
                                     std::span<const std::string> overrides) {
  return apply_overrides(base_for(preset), overrides);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("{}: cannot open file", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace smokehouse::config
