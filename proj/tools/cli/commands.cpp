#include "cli/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "cli/csv.hpp"
#include "vortexcaps/vortexcaps.hpp"

namespace vortexcaps::cli {

namespace {

enum class Geometry { one, band };

Geometry geometry_of(const Json& config) {
  const bool one = config.contains("state") && !config["state"].is_null();
  const bool band = config.contains("band") && !config["band"].is_null();
  if (one && band) throw ConfigError("config: give either state or band");
  if (!one && !band) throw ConfigError("config: missing state or band");
  return one ? Geometry::one : Geometry::band;
}

/// Hash of the run parameters; the output destination is excluded.
std::string run_hash(const Json& config) {
  Json params = config;
  params.erase("output");
  return config_hash(params);
}

std::string output_path(const Json& config) {
  return lookup<std::string>(config, "output", "path").value_or("");
}

template <typename T>
T section_value(const Json& config, const std::string& section,
                const std::string& key, T fallback) {
  return lookup<T>(config, section, key).value_or(fallback);
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string s;
  for (const auto& l : labels) s += (s.empty() ? "" : " ") + l;
  return s.empty() ? "none" : s;
}

std::vector<std::string> coefficient_header(const std::string& prefix,
                                            int modes) {
  std::vector<std::string> h;
  for (int n = 1; n <= modes; ++n) h.push_back(prefix + std::to_string(n));
  return h;
}

void report_collisions(const std::vector<Collision>& collisions,
                       std::ostream& err) {
  for (const auto& c : collisions) {
    err << "collision: c_" << c.m << (c.plus_at_m ? "^+" : "^-") << " = c_"
        << c.k * c.m << (c.plus_at_m ? "^-" : "^+") << " (gap "
        << format_double(c.gap) << ")\n";
  }
}

CsvTable branch_table(const Branch& branch, const Json& state_json,
                      int n_collocation) {
  const int k_count = branch.profile.interfaces();
  const int modes =
      branch.points.empty() ? 0 : branch.points.front().contours[0].modes();
  std::vector<std::string> header{"epsilon", "c", "residual"};
  for (int k = 0; k < k_count; ++k) {
    const std::string prefix =
        k_count == 1 ? "f_" : "f" + std::to_string(k + 1) + "_";
    for (auto& h : coefficient_header(prefix, modes)) header.push_back(h);
  }
  CsvTable table(header);
  table.add_meta("kind", k_count == 1 ? "one" : "band");
  table.add_meta("state", state_json.dump());
  table.add_meta("fold", std::to_string(branch.fold));
  table.add_meta("kappa", std::to_string(branch.kappa));
  table.add_meta("bifurcation-speed", format_double(branch.bifurcation_speed));
  table.add_meta("pinned", "f" + std::to_string(branch.pin.interface + 1) +
                               "_" + std::to_string(branch.pin.index + 1));
  table.add_meta("collocation", std::to_string(n_collocation));
  for (const auto& p : branch.points) {
    std::vector<CsvCell> row{p.epsilon, p.c, p.residual_norm};
    for (const auto& contour : p.contours) {
      for (double a : contour.coeffs) row.emplace_back(a);
    }
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace

int run_command(const std::string& command, const Json& config,
                std::ostream& out, std::ostream& err) {
  try {
    if (command == "spectrum") return cmd_spectrum(config, out, err);
    if (command == "region-scan") return cmd_region_scan(config, out, err);
    if (command == "branch") return cmd_branch(config, out, err);
    if (command == "evolve") return cmd_evolve(config, out, err);
    if (command == "verify") return cmd_verify(config, out, err);
    err << "unknown command: " << command << '\n';
    return exit_config_error;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.what() << '\n';
    return exit_degenerate;
  } catch (const ContinuationStall& e) {
    err << "continuation stall: " << e.what() << '\n';
    return exit_stall;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return exit_stall;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_degenerate;
  }
}

int cmd_spectrum(const Json& config, std::ostream& out, std::ostream&) {
  const std::string hash = run_hash(config);
  if (geometry_of(config) == Geometry::one) {
    const FlatCapState state = state_from_json(config["state"]);
    const int m_max = section_value(config, "spectrum", "m_max", 8);
    if (m_max < 1) throw ConfigError("spectrum.m_max must be positive");
    CsvTable table({"m", "c"});
    table.add_meta("kind", "one");
    for (int m = 1; m <= m_max; ++m) {
      table.add_row({static_cast<long long>(m),
                     burbea_shifted_speed(m, state.gamma, state.omega_n,
                                          state.omega_s)});
    }
    write_table(table, output_path(config), hash, out);
    return exit_ok;
  }
  const BandState band = band_from_json(config["band"]);
  const int n_max = section_value(config, "spectrum", "n_max", 64);
  if (n_max < 1) throw ConfigError("spectrum.n_max must be positive");
  const NondegeneracyCase nd = nondegeneracy_case(band);
  const std::optional<int> threshold = find_threshold_n(band, n_max);
  CsvTable table({"n", "c_minus", "c_plus", "discriminant", "valid"});
  table.add_meta("kind", "band");
  table.add_meta("threshold-n", threshold ? std::to_string(*threshold) : "none");
  table.add_meta("nondegeneracy", to_string(nd.kind));
  table.add_meta("hypotheses", join_labels(nd.labels));
  for (int n = 1; n <= n_max; ++n) {
    const SpectrumEntry e = band_speeds(n, band);
    table.add_row({static_cast<long long>(n), e.c_minus, e.c_plus,
                   e.discriminant, static_cast<long long>(e.valid ? 1 : 0)});
  }
  write_table(table, output_path(config), hash, out);
  return exit_ok;
}

int cmd_region_scan(const Json& config, std::ostream& out, std::ostream&) {
  const int resolution = section_value(config, "region_scan", "resolution", 128);
  const std::string select =
      section_value<std::string>(config, "region_scan", "select", "all");
  if (resolution < 16 || (resolution & (resolution - 1)) != 0) {
    throw ConfigError(
        "region_scan.resolution must be a power of two, at least 16");
  }
  std::vector<RegionPoint> points;
  if (select == "all") {
    points = region_grid(resolution);
  } else if (select == "fig1a") {
    points = admissible_region_scan(resolution, RegionSelector::fig1a);
  } else if (select == "fig1b") {
    points = admissible_region_scan(resolution, RegionSelector::fig1b);
  } else if (select == "either") {
    points = admissible_region_scan(resolution, RegionSelector::either);
  } else if (select == "both") {
    points = admissible_region_scan(resolution, RegionSelector::both);
  } else {
    throw ConfigError("region_scan.select must be all|fig1a|fig1b|either|both");
  }
  CsvTable table({"theta1", "theta2", "fig1a", "fig1b"});
  table.add_meta("resolution", std::to_string(resolution));
  table.add_meta("select", select);
  for (const auto& p : points) {
    table.add_row({p.theta1, p.theta2, static_cast<long long>(p.fig1a),
                   static_cast<long long>(p.fig1b)});
  }
  write_table(table, output_path(config), run_hash(config), out);
  return exit_ok;
}

int cmd_branch(const Json& config, std::ostream& out, std::ostream& err) {
  const std::string hash = run_hash(config);
  const NumericsConfig numerics = numerics_from_json(config);
  const int m = section_value(config, "branch", "m", 2);
  const double eps_max = section_value(config, "branch", "eps_max", 0.05);
  const int steps = section_value(config, "branch", "steps", 10);
  const bool both = section_value(config, "branch", "both_signs", true);
  if (m < 1) throw ConfigError("branch.m must be positive");
  if (!(eps_max > 0.0)) throw ConfigError("branch.eps_max must be positive");
  if (steps < 1) throw ConfigError("branch.steps must be positive");

  ContinuationOptions opts;
  opts.modes = numerics.modes;
  opts.n_collocation = numerics.collocation;
  opts.newton.tol = numerics.newton_tol;
  opts.both_signs = both;
  const int n_collocation = numerics.collocation > 0
                                ? numerics.collocation
                                : default_collocation(m, numerics.modes);
  if (n_collocation < 4 * m * numerics.modes) {
    throw ConfigError("numerics.collocation below 4 m modes");
  }

  Json state_json;
  Branch branch;
  try {
    if (geometry_of(config) == Geometry::one) {
      const FlatCapState state = state_from_json(config["state"]);
      state_json = state_to_json(state);
      branch = branch_one(state, m, eps_max, steps, opts);
    } else {
      const int kappa = section_value(config, "branch", "kappa", 1);
      if (kappa != 1 && kappa != -1) {
        throw ConfigError("branch.kappa must be +1 or -1");
      }
      const BandState band = band_from_json(config["band"]);
      state_json = band_to_json(band);
      const std::optional<int> threshold = find_threshold_n(band);
      if (!threshold || m < *threshold) {
        err << "pre-flight: m = " << m << " is below the spectral threshold "
            << (threshold ? std::to_string(*threshold) : "(none)") << '\n';
        return exit_degenerate;
      }
      if (nondegeneracy_case(band).kind == NondegeneracyKind::unclassified) {
        err << "pre-flight: no non-degeneracy hypothesis holds\n";
        return exit_degenerate;
      }
      const auto collisions = collision_scan(band, m, 64);
      if (!collisions.empty()) {
        err << "pre-flight: spectral collision at fold " << m << '\n';
        report_collisions(collisions, err);
        return exit_degenerate;
      }
      branch = branch_two(band, m, kappa, eps_max, steps, opts);
    }
  } catch (const ContinuationStall& stall) {
    err << "continuation stall: " << stall.what() << '\n';
    CsvTable table = branch_table(stall.partial(), state_json, n_collocation);
    table.add_meta("status", "stalled");
    write_table(table, output_path(config), hash, out);
    return exit_stall;
  }
  CsvTable table = branch_table(branch, state_json, n_collocation);
  table.add_meta("status", "complete");
  write_table(table, output_path(config), hash, out);
  return exit_ok;
}

namespace {

struct EvolveSetup {
  ZonalProfile profile;
  ContourSamples f0;
  int fold = 1;
  double c = 0.0;
  int n_collocation = 0;
};

ZonalProfile profile_from_config(const Json& config) {
  if (geometry_of(config) == Geometry::one) {
    return profile_of(state_from_json(config["state"]));
  }
  return profile_of(band_from_json(config["band"]));
}

EvolveSetup setup_from_branch(const Json& config, int collocation) {
  const auto csv_path = lookup<std::string>(config, "evolve", "branch_csv");
  if (!csv_path) throw ConfigError("evolve.branch_csv required");
  CsvDocument doc;
  try {
    doc = read_csv(*csv_path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("evolve: ") + e.what());
  }
  const int row = section_value(config, "evolve", "row", 0);
  if (row < 0 || row >= static_cast<int>(doc.rows.size())) {
    throw ConfigError("evolve.row out of range");
  }
  EvolveSetup s;
  const bool has_state = (config.contains("state") && !config["state"].is_null()) ||
                         (config.contains("band") && !config["band"].is_null());
  const std::string kind = doc.meta_value("kind");
  if (has_state) {
    s.profile = profile_from_config(config);
  } else {
    Json state;
    try {
      state = Json::parse(doc.meta_value("state"));
    } catch (const Json::exception&) {
      throw ConfigError("evolve: branch CSV carries no state");
    }
    s.profile = kind == "band" ? profile_of(band_from_json(state))
                               : profile_of(state_from_json(state));
  }
  try {
    s.fold = std::stoi(doc.meta_value("fold"));
    s.n_collocation = collocation > 0 ? collocation
                                      : std::stoi(doc.meta_value("collocation"));
  } catch (const std::exception&) {
    throw ConfigError("evolve: branch CSV lacks fold/collocation metadata");
  }
  const auto& cells = doc.rows[static_cast<std::size_t>(row)];
  const int c_col = doc.column("c");
  if (c_col < 0) throw ConfigError("evolve: branch CSV has no c column");
  s.c = std::stod(cells[static_cast<std::size_t>(c_col)]);
  const int k_count = s.profile.interfaces();
  for (int k = 0; k < k_count; ++k) {
    const std::string prefix =
        k_count == 1 ? "f_" : "f" + std::to_string(k + 1) + "_";
    std::vector<double> coeffs;
    for (int n = 1;; ++n) {
      const int col = doc.column(prefix + std::to_string(n));
      if (col < 0) break;
      coeffs.push_back(std::stod(cells[static_cast<std::size_t>(col)]));
    }
    if (coeffs.empty()) {
      throw ConfigError("evolve: branch CSV does not match the state");
    }
    s.f0.push_back(synthesize_fold_cosine(coeffs, s.fold, s.n_collocation));
  }
  return s;
}

}  // namespace

int cmd_evolve(const Json& config, std::ostream& out, std::ostream& err) {
  const std::string hash = run_hash(config);
  const NumericsConfig numerics = numerics_from_json(config);
  const std::string initial =
      section_value<std::string>(config, "evolve", "initial", "flat");
  const double t_end = section_value(config, "evolve", "t_end", 10.0);
  if (!(t_end > 0.0)) throw ConfigError("evolve.t_end must be positive");

  EvolveSetup s;
  if (initial == "branch") {
    s = setup_from_branch(config, numerics.collocation);
  } else if (initial == "flat" || initial == "mode") {
    s.profile = profile_from_config(config);
    s.n_collocation = numerics.collocation > 0 ? numerics.collocation : 64;
    const int k_count = s.profile.interfaces();
    s.f0.assign(static_cast<std::size_t>(k_count),
                std::vector<double>(static_cast<std::size_t>(s.n_collocation),
                                    0.0));
    if (initial == "mode") {
      const int mode = section_value(config, "evolve", "mode", 2);
      if (mode < 1 || 2 * mode >= s.n_collocation) {
        throw ConfigError("evolve.mode must lie in [1, collocation / 2)");
      }
      const std::array<double, 2> amp{
          section_value(config, "evolve", "amplitude", 1e-3),
          section_value(config, "evolve", "amplitude2", 0.0)};
      for (int k = 0; k < k_count; ++k) {
        s.f0[static_cast<std::size_t>(k)] = synthesize_fold_cosine(
            std::vector<double>{amp[static_cast<std::size_t>(k)]}, mode,
            s.n_collocation);
      }
      s.fold = mode;
    }
  } else {
    throw ConfigError("evolve.initial must be flat|mode|branch");
  }
  if (auto c = lookup<double>(config, "evolve", "c")) s.c = *c;

  const long long steps =
      static_cast<long long>(std::ceil(t_end / numerics.dt - 1e-9));
  EvolutionOptions opts;
  opts.fold = s.n_collocation % s.fold == 0 ? s.fold : 1;
  opts.record_every = section_value(
      config, "evolve", "record_every",
      static_cast<int>(std::max<long long>(1, steps / 100)));
  if (opts.record_every < 1) {
    throw ConfigError("evolve.record_every must be positive");
  }
  const Trajectory traj =
      evolve(s.f0, s.profile, t_end, numerics.dt, opts);

  const int half = s.n_collocation / 2;
  std::vector<std::string> header{"t", "interface"};
  for (int k = 0; k <= half; ++k) header.push_back("a_" + std::to_string(k));
  for (int k = 1; k < half; ++k) header.push_back("b_" + std::to_string(k));
  header.push_back("area");
  header.push_back("gauss");
  header.push_back("rigid_rotation_error");
  CsvTable table(header);
  table.add_meta("initial", initial);
  table.add_meta("interfaces", std::to_string(s.profile.interfaces()));
  table.add_meta("collocation", std::to_string(s.n_collocation));
  table.add_meta("fold", std::to_string(s.fold));
  table.add_meta("c", format_double(s.c));
  table.add_meta("dt", format_double(numerics.dt));
  table.add_meta("status", traj.aborted ? "aborted" : "complete");
  double deviation = 0.0;
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const Snapshot& snap = traj.snapshots[i];
    deviation = std::max(deviation, rotation_deviation(traj, i, s.c));
    for (std::size_t k = 0; k < snap.f.size(); ++k) {
      const FourierSeries fs = real_fourier(snap.f[k]);
      std::vector<CsvCell> row{snap.t, static_cast<long long>(k + 1)};
      for (int j = 0; j <= half; ++j) {
        row.emplace_back(fs.a[static_cast<std::size_t>(j)]);
      }
      for (int j = 1; j < half; ++j) {
        row.emplace_back(fs.b[static_cast<std::size_t>(j)]);
      }
      row.emplace_back(snap.areas[k]);
      row.emplace_back(snap.gauss);
      row.emplace_back(deviation);
      table.add_row(std::move(row));
    }
  }
  write_table(table, output_path(config), hash, out);
  if (traj.aborted) {
    err << "evolve aborted: " << traj.abort_reason << '\n';
    return exit_degenerate;
  }
  return exit_ok;
}

std::vector<std::string> verify_suite_names() {
  return {"integrals", "symbol", "vieta", "rotation"};
}

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

SuiteResult suite_integrals(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(1e-3, pi - 1e-3);
  const double shift = options.break_in_closed ? 1e-6 : 0.0;
  double worst = 0.0;
  double worst_diag = 0.0;
  for (int n = 1; n <= 32; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      double a = angle(rng);
      double b = angle(rng);
      while (std::abs(a - b) <= 1e-3) b = angle(rng);
      worst = std::max(worst, std::abs(in_closed(n, a, b) + shift -
                                       in_oracle(n, a, b, 4096)));
    }
    const double a = angle(rng);
    worst_diag = std::max(
        {worst_diag, std::abs(in_closed(n, a, a) + shift + 1.0 / n),
         std::abs(in_oracle(n, a, a, 4096) + 1.0 / n)});
  }
  const bool ok = worst < 1e-9 && worst_diag < 1e-9;
  return {"integrals", ok,
          "max |closed - oracle| = " + sci(worst) + ", diagonal " +
              sci(worst_diag)};
}

SuiteResult suite_symbol() {
  const std::array<FlatCapState, 2> states{
      FlatCapState{pi / 2, 1.0, -1.0, 0.0}, solve_gauss_one(1.0, -1.0, 0.3)};
  const int modes = 4;
  const double c = 0.1;
  double worst = 0.0;
  for (const auto& state : states) {
    const ZonalProfile profile = profile_of(state);
    for (int m = 1; m <= 3; ++m) {
      const int n_points = default_collocation(m, modes);
      const Jacobian jac =
          jacobian_fd(c, {zero_contour(m, modes, n_points)}, profile);
      for (int n = 1; n <= modes; ++n) {
        const double symbol = one_interface_symbol(m, n, c, state);
        const double fd = jac.matrix(n - 1, n);
        worst = std::max(worst, std::abs(fd - symbol) / std::abs(symbol));
      }
    }
  }
  return {"symbol", worst < 1e-4, "max relative error = " + sci(worst)};
}

SuiteResult suite_vieta(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.05, pi - 0.05);
  std::uniform_real_distribution<double> vort(-2.0, 2.0);
  double worst_det = 0.0;
  double worst_vieta = 0.0;
  int bands = 0;
  while (bands < 20) {
    double t1 = angle(rng);
    double t2 = angle(rng);
    if (t1 > t2) std::swap(t1, t2);
    const double wn = vort(rng);
    const double ws = vort(rng);
    const double gamma = vort(rng);
    if (t2 - t1 < 0.05) continue;
    BandState band;
    try {
      band = make_band(t1, t2, wn, ws, gamma);
    } catch (const std::exception&) {
      continue;
    }
    ++bands;
    for (int n = 1; n <= 64; ++n) {
      const SpectrumEntry e = band_speeds(n, band);
      if (!e.valid) continue;
      const DetCoeffs dc = band_det_coeffs(n, band);
      const double scale = 1.0 + dc.beta * dc.beta + std::abs(dc.gamma);
      worst_det = std::max({worst_det,
                            std::abs(band_matrix(n, e.c_plus, band).det()) / scale,
                            std::abs(band_matrix(n, e.c_minus, band).det()) / scale});
      worst_vieta = std::max(
          {worst_vieta, std::abs(e.c_plus + e.c_minus - dc.beta),
           std::abs(e.c_plus * e.c_minus - dc.gamma)});
    }
  }
  const bool ok = worst_det < 1e-10 && worst_vieta < 1e-10;
  return {"vieta", ok,
          "max |det| = " + sci(worst_det) + ", max Vieta defect = " +
              sci(worst_vieta)};
}

SuiteResult suite_rotation() {
  const int n_points = 128;
  double spread = 0.0;
  const std::array<ZonalProfile, 2> profiles{
      profile_of(solve_gauss_one(1.0, -1.0, 0.3)),
      profile_of(BandState{pi / 3, 2 * pi / 3, 1.0, -1.0, 1.0, 0.0})};
  for (const auto& profile : profiles) {
    const ContourSamples zero(
        static_cast<std::size_t>(profile.interfaces()),
        std::vector<double>(static_cast<std::size_t>(n_points), 0.0));
    for (const auto& psi : stream_on_contours(profile, zero)) {
      const auto [lo, hi] = std::minmax_element(psi.begin(), psi.end());
      spread = std::max(spread, *hi - *lo);
    }
  }
  // Rotating a contour rotates its velocity.
  const ZonalProfile profile = profiles[0];
  std::vector<double> f(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) {
    const double phi = two_pi * j / n_points;
    f[static_cast<std::size_t>(j)] =
        0.02 * std::cos(2 * phi) + 0.01 * std::sin(3 * phi + 0.4);
  }
  const double shift = 0.37;
  const auto rhs = contour_rhs(profile, {f})[0];
  const auto rhs_rotated = contour_rhs(profile, {shift_samples(f, shift)})[0];
  const auto expected = shift_samples(rhs, shift);
  double covariance = 0.0;
  for (int j = 0; j < n_points; ++j) {
    covariance = std::max(covariance,
                          std::abs(rhs_rotated[static_cast<std::size_t>(j)] -
                                   expected[static_cast<std::size_t>(j)]));
  }
  const bool ok = spread < 1e-8 && covariance < 1e-8;
  return {"rotation", ok,
          "zonal Psi spread = " + sci(spread) + ", rotation defect = " +
              sci(covariance)};
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  const auto names = verify_suite_names();
  for (const auto& s : options.suites) {
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ConfigError("verify: unknown suite " + s);
    }
  }
  auto selected = [&](const std::string& name) {
    return options.suites.empty() ||
           std::find(options.suites.begin(), options.suites.end(), name) !=
               options.suites.end();
  };
  std::vector<SuiteResult> results;
  if (selected("integrals")) results.push_back(suite_integrals(options));
  if (selected("symbol")) results.push_back(suite_symbol());
  if (selected("vieta")) results.push_back(suite_vieta(options.seed));
  if (selected("rotation")) results.push_back(suite_rotation());
  return results;
}

int cmd_verify(const Json& config, std::ostream& out, std::ostream&) {
  VerifyOptions options;
  options.suites = section_value(config, "verify", "suites",
                                 std::vector<std::string>{});
  options.break_in_closed =
      section_value(config, "verify", "break_in_closed", false);
  options.seed = section_value<std::uint64_t>(config, "verify", "seed",
                                              options.seed);
  bool all = true;
  for (const auto& r : run_verify(options)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
        << '\n';
    all = all && r.passed;
  }
  return all ? exit_ok : exit_verify_failed;
}

}  // namespace vortexcaps::cli
