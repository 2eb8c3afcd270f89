#include "cli/config.hpp"

#include <cstdio>
#include <fstream>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"

namespace vortexcaps::cli {

namespace {

double require(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(std::string("config: missing numeric field ") + key);
  }
  return j[key].get<double>();
}

double optional_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_number()) {
    throw ConfigError(std::string("config: field ") + key + " not numeric");
  }
  return j[key].get<double>();
}

}  // namespace

Json state_to_json(const FlatCapState& state) {
  return Json{{"theta0", state.theta0},
              {"omega_n", state.omega_n},
              {"omega_s", state.omega_s},
              {"gamma", state.gamma}};
}

Json band_to_json(const BandState& band) {
  return Json{{"theta1", band.theta1},   {"theta2", band.theta2},
              {"omega_n", band.omega_n}, {"omega_c", band.omega_c},
              {"omega_s", band.omega_s}, {"gamma", band.gamma}};
}

FlatCapState state_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: state must be an object");
  const double theta0 = require(j, "theta0");
  const double omega_s = require(j, "omega_s");
  const double gamma = optional_number(j, "gamma", 0.0);
  FlatCapState state;
  try {
    state = solve_gauss_one(theta0, omega_s, gamma);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("omega_n") && !j["omega_n"].is_null()) {
    state.omega_n = require(j, "omega_n");
    try {
      state.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  return state;
}

BandState band_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: band must be an object");
  const double theta1 = require(j, "theta1");
  const double theta2 = require(j, "theta2");
  const double omega_n = require(j, "omega_n");
  const double omega_s = require(j, "omega_s");
  const double gamma = optional_number(j, "gamma", 0.0);
  BandState band{theta1, theta2, omega_n, 0.0, omega_s, gamma};
  try {
    if (!(theta1 > 0.0 && theta2 > theta1 && theta2 < pi)) {
      throw DomainError("band: need 0 < theta1 < theta2 < pi");
    }
    band.omega_c = solve_gauss_two(theta1, theta2, omega_n, omega_s);
    if (j.contains("omega_c") && !j["omega_c"].is_null()) {
      band.omega_c = require(j, "omega_c");
    }
    band.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return band;
}

NumericsConfig numerics_from_json(const Json& root) {
  NumericsConfig n;
  if (auto v = lookup<int>(root, "numerics", "modes")) n.modes = *v;
  if (auto v = lookup<int>(root, "numerics", "collocation")) n.collocation = *v;
  if (auto v = lookup<double>(root, "numerics", "newton_tol")) {
    n.newton_tol = *v;
  }
  if (auto v = lookup<double>(root, "numerics", "dt")) n.dt = *v;
  if (n.modes < 1) throw ConfigError("numerics.modes must be positive");
  if (n.collocation < 0 || (n.collocation > 0 &&
                            (n.collocation & (n.collocation - 1)) != 0)) {
    throw ConfigError("numerics.collocation must be a power of two");
  }
  if (!(n.newton_tol > 0.0)) {
    throw ConfigError("numerics.newton_tol must be positive");
  }
  if (!(n.dt > 0.0)) throw ConfigError("numerics.dt must be positive");
  return n;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
}

std::string config_hash(const Json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vortexcaps::cli
