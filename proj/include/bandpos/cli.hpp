#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bandpos::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFormat = 2 };

/// Structured result of one command. exit_code reports whether the analysis
/// ran, never the mathematical verdict.
struct RunReport {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  std::vector<std::string> conventions;
  int exit_code = kOk;

  nlohmann::ordered_json to_json() const;
};

inline const std::string kZeroPowerConvention = "0^0 := 1 (entrywise power at r = 0)";
inline const std::string kNaturalsConvention = "N = {1, 2, 3, ...} (0 excluded)";

/// Entry point shared by the bandpos executable and the tests. Subcommands:
/// check-positivity, hadamard, chain, critical-exponent, id-check,
/// counterexample, probe. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandpos::cli
