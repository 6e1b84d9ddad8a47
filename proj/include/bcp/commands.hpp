#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcp/json_io.hpp"

namespace bcp {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitDiverged = 2,
  kExitIncompatible = 3,
  kExitNoAttractor = 4,
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// Overrides the seed given in the config.
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

/// Each command reads its config document, writes its files into out_dir and
/// returns an exit code. Typed errors propagate; run_command maps them.
int cmd_solve(const Json& config, const RunOptions& opt, std::ostream& log);
int cmd_mms(const Json& config, const RunOptions& opt, std::ostream& log);
int cmd_resonance_sweep(const Json& config, const RunOptions& opt, std::ostream& log);
int cmd_oracle_compare(const Json& config, const RunOptions& opt, std::ostream& log);
int cmd_epsilon_scan(const Json& config, const RunOptions& opt, std::ostream& log);
int cmd_invertibility(const Json& config, const RunOptions& opt, std::ostream& log);

const std::vector<std::string>& command_names();

/// Dispatches by name and converts library errors into exit codes with a
/// diagnostic on `err` (one line per field path for config problems).
int run_command(const std::string& name, const Json& config, const RunOptions& opt,
                std::ostream& log, std::ostream& err);
int run_command_file(const std::string& name, const std::string& config_path,
                     const RunOptions& opt, std::ostream& log, std::ostream& err);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bcp
