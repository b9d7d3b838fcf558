#pragma once

// Lumped-capacitance thermal network of the machine. Nodes exchange heat
// through conductances; some conductances are boosted while an exhaust
// fan runs. Heat sources are gated by actuators.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smokehouse/errors.hpp"

namespace smokehouse::plant {

inline constexpr std::string_view kAmbient = "ambient";
inline constexpr double kGuardBand = 300.0;

struct ThermalNode {
  std::string name;
  double heat_capacity = 0.0;  // J/K
  double temperature = 0.0;    // initial, degC
};

struct Conductance {
  std::string node_a;
  std::string node_b;  // may be "ambient"
  double value = 0.0;  // W/K
  std::string fan;     // actuator id that boosts this path, empty for none
  double fan_multiplier = 1.0;
};

struct HeatSource {
  std::string node;
  double power = 0.0;  // W
  std::string driven_by;
};

struct PlantConfig {
  std::vector<ThermalNode> nodes;
  std::vector<Conductance> conductances;
  std::vector<HeatSource> sources;
  double ambient = 25.0;
  double fish_thermal_load = 0.0;  // J/K, added to fish_node
  std::string fish_node = "cook_zone";

  std::optional<std::size_t> index_of(std::string_view name) const;
};

/// Temperatures are stored in PlantConfig::nodes order.
struct PlantState {
  std::vector<double> temperatures;
  double time = 0.0;
};

/// Actuator id -> energized. Sources and fans look themselves up here.
using ActuatorInputs = std::map<std::string, bool, std::less<>>;

/// Structural checks (unique names, endpoints, positivity, connectivity).
std::vector<Violation> validate(const PlantConfig& config, std::string_view prefix = "plant");

/// Every actuator id referenced by a source or fan-boosted conductance.
std::vector<std::string> referenced_actuators(const PlantConfig& config);

PlantState initial_state(const PlantConfig& config);

/// PlantConfig resolved to indices once so a run does not re-resolve names
/// on every integration step.
class ThermalNetwork {
 public:
  explicit ThermalNetwork(const PlantConfig& config);

  /// One classical RK4 step. Throws PlantDiverged past the guard band.
  PlantState step(const PlantState& state, const ActuatorInputs& inputs, double dt) const;

  /// Exact steady state for constant inputs. Throws NoEquilibrium when singular.
  std::vector<double> equilibrium(const ActuatorInputs& inputs) const;

  std::size_t size() const { return capacity_.size(); }
  double ambient() const { return ambient_; }
  const std::vector<double>& capacities() const { return capacity_; }

 private:
  struct Edge {
    std::size_t a;
    std::optional<std::size_t> b;  // nullopt = ambient
    double value;
    std::string fan;
    double fan_multiplier;
  };
  struct Source {
    std::size_t node;
    double power;
    std::string actuator;
  };
  struct Gated {
    std::vector<double> edge_values;
    std::vector<double> node_power;
  };

  Gated gate(const ActuatorInputs& inputs) const;
  void derivative(const Gated& g, const std::vector<double>& t, std::vector<double>& out) const;

  std::vector<double> capacity_;
  std::vector<Edge> edges_;
  std::vector<Source> sources_;
  std::vector<std::string> names_;
  double ambient_;
};

PlantState plant_step(const PlantState& state, const PlantConfig& config,
                      const ActuatorInputs& inputs, double dt);

std::map<std::string, double> equilibrium_temps(const PlantConfig& config,
                                                const ActuatorInputs& inputs);

enum class Preset { ScadLarge, ScadMedium, Milkfish, Tilapia };

inline constexpr Preset kAllPresets[] = {Preset::ScadLarge, Preset::ScadMedium, Preset::Milkfish,
                                         Preset::Tilapia};

std::string_view preset_name(Preset preset);
/// Throws InvalidInput for unknown names.
Preset preset_from_name(std::string_view name);

/// Calibrated four-node topology (boiler_water, cook_zone, smoke_firebox,
/// smoke_path) for one fish batch.
PlantConfig default_plant_config(Preset preset);

}  // namespace smokehouse::plant
