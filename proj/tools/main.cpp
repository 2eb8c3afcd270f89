#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

using vortexcaps::cli::Json;

struct StateFlags {
  bool one = false;
  bool band = false;
  std::optional<double> theta0, theta1, theta2;
  std::optional<double> omega_n, omega_c, omega_s, gamma;
};

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> out;
  StateFlags state;
  std::optional<int> modes, collocation;
  std::optional<double> newton_tol, dt;
  std::optional<int> m_max, n_max;
  std::optional<int> resolution;
  std::optional<std::string> select;
  std::optional<int> m, kappa, steps;
  std::optional<double> eps_max;
  bool one_sided = false;
  std::optional<std::string> initial, branch_csv;
  std::optional<int> mode, row, record_every;
  std::optional<double> amplitude, amplitude2, t_end, c;
  std::vector<std::string> suites;
  bool break_in_closed = false;
  std::optional<std::uint64_t> seed;
};

void add_state_flags(CLI::App* cmd, StateFlags& s) {
  cmd->add_flag("--one", s.one, "single-interface cap");
  cmd->add_flag("--band", s.band, "two-interface band");
  cmd->add_option("--theta0", s.theta0, "cap colatitude");
  cmd->add_option("--theta1", s.theta1, "northern band colatitude");
  cmd->add_option("--theta2", s.theta2, "southern band colatitude");
  cmd->add_option("--omega-n", s.omega_n, "northern vorticity");
  cmd->add_option("--omega-c", s.omega_c, "central band vorticity");
  cmd->add_option("--omega-s", s.omega_s, "southern vorticity");
  cmd->add_option("--gamma", s.gamma, "sphere rotation speed");
}

void add_numerics_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--modes", f.modes, "Fourier modes per interface");
  cmd->add_option("--collocation", f.collocation,
                  "collocation points (power of two)");
  cmd->add_option("--newton-tol", f.newton_tol, "Newton residual tolerance");
}

template <typename T>
void set_if(Json& root, const char* section, const char* key,
            const std::optional<T>& v) {
  if (v) root[section][key] = *v;
}

void overlay_state(Json& root, const StateFlags& s) {
  const bool one_values = s.theta0.has_value();
  const bool band_values = s.theta1 || s.theta2 || s.omega_c;
  if (s.one && s.band) {
    throw vortexcaps::cli::ConfigError("--one and --band are exclusive");
  }
  const bool any = one_values || band_values || s.omega_n || s.omega_s ||
                   s.gamma || s.one || s.band;
  if (!any) return;
  bool band = s.band || (!s.one && band_values);
  if (!s.one && !s.band && !one_values && !band_values) {
    band = root.contains("band");
  }
  const char* section = band ? "band" : "state";
  root.erase(band ? "state" : "band");
  if (!root.contains(section) || !root[section].is_object()) {
    root[section] = Json::object();
  }
  if (band) {
    set_if(root, section, "theta1", s.theta1);
    set_if(root, section, "theta2", s.theta2);
    set_if(root, section, "omega_c", s.omega_c);
  } else {
    set_if(root, section, "theta0", s.theta0);
  }
  set_if(root, section, "omega_n", s.omega_n);
  set_if(root, section, "omega_s", s.omega_s);
  set_if(root, section, "gamma", s.gamma);
}

Json resolve(const std::string& command, const Flags& f) {
  Json root = Json::object();
  if (f.config) root = vortexcaps::cli::load_config_file(*f.config);
  if (!root.is_object()) {
    throw vortexcaps::cli::ConfigError("config: top level must be an object");
  }
  overlay_state(root, f.state);
  set_if(root, "output", "path", f.out);
  set_if(root, "numerics", "modes", f.modes);
  set_if(root, "numerics", "collocation", f.collocation);
  set_if(root, "numerics", "newton_tol", f.newton_tol);
  set_if(root, "numerics", "dt", f.dt);
  set_if(root, "spectrum", "m_max", f.m_max);
  set_if(root, "spectrum", "n_max", f.n_max);
  set_if(root, "region_scan", "resolution", f.resolution);
  set_if(root, "region_scan", "select", f.select);
  set_if(root, "branch", "m", f.m);
  set_if(root, "branch", "kappa", f.kappa);
  set_if(root, "branch", "eps_max", f.eps_max);
  set_if(root, "branch", "steps", f.steps);
  if (f.one_sided) root["branch"]["both_signs"] = false;
  set_if(root, "evolve", "initial", f.initial);
  set_if(root, "evolve", "branch_csv", f.branch_csv);
  set_if(root, "evolve", "mode", f.mode);
  set_if(root, "evolve", "row", f.row);
  set_if(root, "evolve", "record_every", f.record_every);
  set_if(root, "evolve", "amplitude", f.amplitude);
  set_if(root, "evolve", "amplitude2", f.amplitude2);
  set_if(root, "evolve", "t_end", f.t_end);
  set_if(root, "evolve", "c", f.c);
  if (!f.suites.empty()) root["verify"]["suites"] = f.suites;
  if (f.break_in_closed) root["verify"]["break_in_closed"] = true;
  set_if(root, "verify", "seed", f.seed);
  root["command"] = command;
  return root;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating vortex caps and bands on the sphere"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "JSON configuration file");
  app.add_option("--out", f.out, "output CSV path (default stdout)");
  app.fallthrough();

  auto* spectrum = app.add_subcommand("spectrum", "bifurcation speeds");
  add_state_flags(spectrum, f.state);
  spectrum->add_option("--m-max", f.m_max, "largest fold (one interface)");
  spectrum->add_option("--n-max", f.n_max, "largest mode (band)");

  auto* region = app.add_subcommand("region-scan", "admissible (theta1, theta2)");
  region->add_option("--resolution", f.resolution, "grid points per axis");
  region->add_option("--select", f.select, "all|fig1a|fig1b|either|both");

  auto* branch = app.add_subcommand("branch", "Newton continuation");
  add_state_flags(branch, f.state);
  add_numerics_flags(branch, f);
  branch->add_option("--m", f.m, "symmetry fold");
  branch->add_option("--kappa", f.kappa, "band branch sign, +1 or -1");
  branch->add_option("--eps-max", f.eps_max, "largest pinned amplitude");
  branch->add_option("--steps", f.steps, "continuation steps per sign");
  branch->add_flag("--one-sided", f.one_sided, "positive amplitudes only");

  auto* evolve = app.add_subcommand("evolve", "contour dynamics in time");
  add_state_flags(evolve, f.state);
  add_numerics_flags(evolve, f);
  evolve->add_option("--dt", f.dt, "time step");
  evolve->add_option("--initial", f.initial, "flat|mode|branch");
  evolve->add_option("--mode", f.mode, "wavenumber of the mode perturbation");
  evolve->add_option("--amplitude", f.amplitude, "mode amplitude, interface 1");
  evolve->add_option("--amplitude2", f.amplitude2,
                     "mode amplitude, interface 2");
  evolve->add_option("--branch-csv", f.branch_csv, "branch CSV to start from");
  evolve->add_option("--row", f.row, "data row of the branch CSV");
  evolve->add_option("--t-end", f.t_end, "final time");
  evolve->add_option("--c", f.c, "rotation speed for the rigid error");
  evolve->add_option("--record-every", f.record_every, "steps per snapshot");

  auto* verify = app.add_subcommand("verify", "oracle self-checks");
  verify->add_option("--suite", f.suites, "integrals|symbol|vieta|rotation");
  verify->add_flag("--break-in-closed", f.break_in_closed,
                   "perturb the closed-form integral");
  verify->add_option("--seed", f.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return vortexcaps::cli::exit_config_error;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  Json config;
  try {
    config = resolve(command, f);
  } catch (const vortexcaps::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n' << chosen->help();
    return vortexcaps::cli::exit_config_error;
  }
  const int code =
      vortexcaps::cli::run_command(command, config, std::cout, std::cerr);
  if (code == vortexcaps::cli::exit_config_error) std::cerr << chosen->help();
  return code;
}
