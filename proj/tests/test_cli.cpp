#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "doctest.h"
#include "vortexcaps/caps.hpp"
#include "vortexcaps/geometry.hpp"

using namespace vortexcaps;
using namespace vortexcaps::cli;

namespace {

Json hemisphere_config(const std::string& command) {
  Json j;
  j["command"] = command;
  j["state"] = {{"theta0", pi / 2}, {"omega_s", -1.0}, {"gamma", 0.0}};
  return j;
}

Json symmetric_config(const std::string& command) {
  Json j;
  j["command"] = command;
  j["band"] = {{"theta1", pi / 3}, {"theta2", 2 * pi / 3}, {"omega_n", 1.0},
               {"omega_s", 1.0},   {"gamma", 0.0}};
  return j;
}

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const Json& config) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(config["command"].get<std::string>(), config, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Runs to a file and parses it back.
CsvDocument run_to_file(Json config, const std::string& path, int expected = exit_ok) {
  config["output"]["path"] = path;
  const Run r = run(config);
  REQUIRE(r.code == expected);
  return read_csv(path);
}

double cell(const CsvDocument& doc, std::size_t row, const std::string& name) {
  const int col = doc.column(name);
  REQUIRE(col >= 0);
  return std::stod(doc.rows.at(row).at(static_cast<std::size_t>(col)));
}

}  // namespace

TEST_CASE("spectrum output is deterministic and starts with the config hash") {
  const Json config = hemisphere_config("spectrum");
  const Run a = run(config);
  const Run b = run(config);
  REQUIRE(a.code == exit_ok);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# config-hash: ", 0) == 0);

  // The output path does not change the hash; the state does.
  Json moved = config;
  moved["output"]["path"] = "-";
  CHECK(run(moved).out == a.out);
  Json other = config;
  other["state"]["theta0"] = 1.0;
  const Run c = run(other);
  CHECK(c.out.substr(0, c.out.find('\n')) != a.out.substr(0, a.out.find('\n')));
}

TEST_CASE("spectrum tables") {
  const CsvDocument one = run_to_file(hemisphere_config("spectrum"), "cli_spectrum_one.csv");
  CHECK(one.header == std::vector<std::string>{"m", "c"});
  REQUIRE(one.rows.size() == 8);
  CHECK(cell(one, 0, "c") == 0.0);
  CHECK(cell(one, 1, "c") == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(one.meta_value("kind") == "one");
  CHECK(one.meta_value("config-hash").size() == 16);

  Json band = symmetric_config("spectrum");
  band["spectrum"]["n_max"] = 16;
  const CsvDocument two = run_to_file(band, "cli_spectrum_band.csv");
  CHECK(two.header ==
        std::vector<std::string>{"n", "c_minus", "c_plus", "discriminant", "valid"});
  REQUIRE(two.rows.size() == 16);
  CHECK(cell(two, 1, "c_plus") == doctest::Approx(0.15713484026367733).epsilon(1e-14));
  CHECK(cell(two, 1, "c_minus") == doctest::Approx(-0.15713484026367733).epsilon(1e-14));
  CHECK(cell(two, 1, "discriminant") == doctest::Approx(8.0 / 81).epsilon(1e-13));
  CHECK(two.meta_value("threshold-n") == "2");
  std::remove("cli_spectrum_one.csv");
  std::remove("cli_spectrum_band.csv");
}

TEST_CASE("configuration errors exit with code 2") {
  Json none;
  none["command"] = "spectrum";
  CHECK(run(none).code == exit_config_error);

  Json both = hemisphere_config("spectrum");
  both["band"] = symmetric_config("spectrum")["band"];
  CHECK(run(both).code == exit_config_error);

  Json inconsistent = hemisphere_config("spectrum");
  inconsistent["state"]["omega_n"] = 3.0;
  CHECK(run(inconsistent).code == exit_config_error);

  Json coarse;
  coarse["command"] = "region-scan";
  coarse["region_scan"]["resolution"] = 8;
  CHECK(run(coarse).code == exit_config_error);
  coarse["region_scan"]["resolution"] = 48;
  CHECK(run(coarse).code == exit_config_error);

  Json bad_dt = hemisphere_config("evolve");
  bad_dt["numerics"]["dt"] = 0.0;
  CHECK(run(bad_dt).code == exit_config_error);

  Json unknown = hemisphere_config("nonsense");
  CHECK(run(unknown).code == exit_config_error);
}

TEST_CASE("region scan grid") {
  Json config;
  config["command"] = "region-scan";
  config["region_scan"]["resolution"] = 16;
  const CsvDocument all = run_to_file(config, "cli_region.csv");
  CHECK(all.header == std::vector<std::string>{"theta1", "theta2", "fig1a", "fig1b"});
  CHECK(all.rows.size() == 16 * 15 / 2);
  for (std::size_t i = 0; i < all.rows.size(); ++i) {
    CHECK(cell(all, i, "theta1") < cell(all, i, "theta2"));
  }
  config["region_scan"]["select"] = "both";
  const CsvDocument both = run_to_file(config, "cli_region.csv");
  CHECK(!both.rows.empty());
  CHECK(both.rows.size() < all.rows.size());
  for (std::size_t i = 0; i < both.rows.size(); ++i) {
    CHECK(cell(both, i, "fig1a") == 1.0);
    CHECK(cell(both, i, "fig1b") == 1.0);
  }
  std::remove("cli_region.csv");
}

TEST_CASE("branch then evolve through a CSV file") {
  Json config = hemisphere_config("branch");
  config["numerics"] = {{"modes", 8}, {"collocation", 64}};
  config["branch"] = {{"m", 2}, {"eps_max", 0.02}, {"steps", 2}};
  const CsvDocument b = run_to_file(config, "cli_branch.csv");
  REQUIRE(b.rows.size() == 4);
  CHECK(b.header.front() == "epsilon");
  CHECK(b.column("c") == 1);
  CHECK(b.column("residual") == 2);
  CHECK(b.column("f_8") == static_cast<int>(b.header.size()) - 1);
  CHECK(b.meta_value("status") == "complete");
  CHECK(b.meta_value("fold") == "2");
  CHECK(b.meta_value("collocation") == "64");
  for (std::size_t i = 0; i < b.rows.size(); ++i) {
    CHECK(cell(b, i, "residual") < 1e-10);
    CHECK(cell(b, i, "f_1") == cell(b, i, "epsilon"));
    CHECK(std::abs(cell(b, i, "c") + 0.5) < 1e-3);
  }

  Json ev;
  ev["command"] = "evolve";
  ev["numerics"]["dt"] = 5e-3;
  ev["evolve"] = {{"initial", "branch"}, {"branch_csv", "cli_branch.csv"},
                  {"row", 3},          {"t_end", 0.5}};
  const CsvDocument t = run_to_file(ev, "cli_evolve.csv");
  CHECK(t.meta_value("initial") == "branch");
  CHECK(t.meta_value("status") == "complete");
  CHECK(std::stod(t.meta_value("c")) == cell(b, 3, "c"));
  CHECK(t.header.front() == "t");
  CHECK(t.header.back() == "rigid_rotation_error");
  CHECK(t.column("a_32") >= 0);
  CHECK(t.column("b_31") >= 0);
  CHECK(t.column("b_32") < 0);
  REQUIRE(!t.rows.empty());
  CHECK(cell(t, t.rows.size() - 1, "t") == doctest::Approx(0.5));
  double previous = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double e = cell(t, i, "rigid_rotation_error");
    CHECK(e < 1e-8);
    CHECK(e >= previous);
    previous = e;
  }
  // Reading the written table reproduces it.
  const Run again = run(ev);
  CHECK(again.code == exit_ok);
  std::ifstream in("cli_evolve.csv");
  std::stringstream text;
  text << in.rdbuf();
  Json to_stdout = ev;
  to_stdout.erase("output");
  CHECK(run(to_stdout).out == text.str());

  ev["evolve"]["row"] = 7;
  CHECK(run(ev).code == exit_config_error);
  std::remove("cli_branch.csv");
  std::remove("cli_evolve.csv");
}

TEST_CASE("branch exit codes for stalls and degenerate bands") {
  Json stall = hemisphere_config("branch");
  stall["numerics"] = {{"modes", 16}, {"collocation", 128}};
  stall["branch"] = {{"m", 2}, {"eps_max", 0.6}, {"steps", 4}, {"both_signs", false}};
  const CsvDocument partial = run_to_file(stall, "cli_stall.csv", exit_stall);
  CHECK(partial.meta_value("status") == "stalled");
  REQUIRE(partial.rows.size() == 1);
  CHECK(cell(partial, 0, "epsilon") == doctest::Approx(0.15));
  std::remove("cli_stall.csv");

  Json below = symmetric_config("branch");
  below["branch"] = {{"m", 1}, {"kappa", 1}};
  const Run r = run(below);
  CHECK(r.code == exit_degenerate);
  CHECK(!r.err.empty());
}

TEST_CASE("evolve flat and mode starts") {
  Json flat = symmetric_config("evolve");
  flat["numerics"]["dt"] = 0.05;
  flat["evolve"] = {{"initial", "flat"}, {"t_end", 1.0}};
  const CsvDocument f = run_to_file(flat, "cli_flat.csv");
  CHECK(f.meta_value("interfaces") == "2");
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    CHECK(std::abs(cell(f, i, "a_0")) < 1e-12);
    CHECK(std::abs(cell(f, i, "gauss")) < 1e-12);
  }

  Json mode = hemisphere_config("evolve");
  mode["numerics"]["dt"] = 0.05;
  mode["evolve"] = {{"initial", "mode"}, {"mode", 3}, {"amplitude", 1e-4}, {"t_end", 1.0}};
  const CsvDocument m = run_to_file(mode, "cli_mode.csv");
  CHECK(m.meta_value("fold") == "3");
  CHECK(cell(m, 0, "a_3") == doctest::Approx(1e-4).epsilon(1e-12));
  mode["evolve"]["mode"] = 40;
  CHECK(run(mode).code == exit_config_error);
  std::remove("cli_flat.csv");
  std::remove("cli_mode.csv");
}

TEST_CASE("verify suites") {
  const auto names = verify_suite_names();
  CHECK(names == std::vector<std::string>{"integrals", "symbol", "vieta", "rotation"});
  Json config;
  config["command"] = "verify";
  config["verify"]["suites"] = {"vieta"};
  const Run r = run(config);
  CHECK(r.code == exit_ok);
  CHECK(r.out.rfind("PASS vieta: ", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

  config["verify"]["suites"] = {"integrals"};
  config["verify"]["break_in_closed"] = true;
  const Run broken = run(config);
  CHECK(broken.code == exit_verify_failed);
  CHECK(broken.out.rfind("FAIL integrals: ", 0) == 0);

  config["verify"]["suites"] = {"nope"};
  CHECK(run(config).code == exit_config_error);
  CHECK_THROWS_AS(run_verify({{"nope"}, false, 1}), ConfigError);
}

TEST_CASE("state JSON round trip") {
  const FlatCapState s = solve_gauss_one(1.1, -0.7, 0.25);
  const FlatCapState back = state_from_json(state_to_json(s));
  CHECK(back.theta0 == s.theta0);
  CHECK(back.omega_n == s.omega_n);
  CHECK(back.omega_s == s.omega_s);
  CHECK(back.gamma == s.gamma);
  const BandState b = make_band(0.8, 2.0, 1.0, -0.4, 0.1);
  const BandState bb = band_from_json(band_to_json(b));
  CHECK(bb.omega_c == b.omega_c);
  CHECK(bb.theta2 == b.theta2);
  CHECK(config_hash(state_to_json(s)) == config_hash(state_to_json(back)));
}
