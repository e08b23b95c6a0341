#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hemato::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,
  exit_numerical = 3,
  exit_check = 4,
};

/// Entry point of the `hemato` tool. Subcommands: equilibria, coeffs, scan,
/// simulate, sweep, reproduce. Each writes its CSVs and a run_manifest.json
/// into --out-dir.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments following the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::string_view data);

}  // namespace hemato::app
