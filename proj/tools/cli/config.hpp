#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "vortexcaps/caps.hpp"

namespace vortexcaps::cli {

using Json = nlohmann::json;

/// Raised for malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json state_to_json(const FlatCapState& state);
Json band_to_json(const BandState& band);

/// Missing omega_n is solved from the Gauss constraint; a supplied value
/// must satisfy it.
FlatCapState state_from_json(const Json& j);

/// Missing omega_c is solved from the Gauss constraint.
BandState band_from_json(const Json& j);

struct NumericsConfig {
  int modes = 32;
  /// Zero selects the default grid for the fold.
  int collocation = 0;
  double newton_tol = 1e-10;
  double dt = 1e-3;
};

NumericsConfig numerics_from_json(const Json& root);

Json load_config_file(const std::string& path);

/// Lower-case hex FNV-1a 64 hash of the compact dump of `config`.
std::string config_hash(const Json& config);

/// Value at root[section][key] if present.
template <typename T>
std::optional<T> lookup(const Json& root, const std::string& section,
                        const std::string& key) {
  if (!root.contains(section) || !root[section].is_object()) return {};
  const Json& s = root[section];
  if (!s.contains(key) || s[key].is_null()) return {};
  try {
    return s[key].get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError("config: " + section + "." + key + ": " + e.what());
  }
}

}  // namespace vortexcaps::cli
