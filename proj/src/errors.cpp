#include "smokehouse/errors.hpp"

namespace smokehouse {

namespace {

std::string join(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.path.empty() ? v.message : v.path + ": " + v.message;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

}  // namespace smokehouse
