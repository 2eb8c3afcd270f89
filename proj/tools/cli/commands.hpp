#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace vortexcaps::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_config_error = 2,
  exit_degenerate = 3,
  exit_stall = 4,
};

/// Runs one command on a resolved configuration: the JSON config file with
/// flag overrides applied. Tables go to output.path or to `out`;
/// diagnostics go to `err`. Returns the process exit code.
int run_command(const std::string& command, const Json& config,
                std::ostream& out, std::ostream& err);

int cmd_spectrum(const Json& config, std::ostream& out, std::ostream& err);
int cmd_region_scan(const Json& config, std::ostream& out, std::ostream& err);
int cmd_branch(const Json& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const Json& config, std::ostream& out, std::ostream& err);
int cmd_verify(const Json& config, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  /// Empty runs every suite.
  std::vector<std::string> suites;
  /// Shifts in_closed by 1e-6 inside the integrals suite.
  bool break_in_closed = false;
  std::uint64_t seed = 12345;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<std::string> verify_suite_names();

/// Throws ConfigError on an unknown suite name.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

}  // namespace vortexcaps::cli
