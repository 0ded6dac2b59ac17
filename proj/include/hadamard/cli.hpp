#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hadamard::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNotConverged = 2 };

struct RunConfig {
  std::string subcommand;  // barycenter | select | classify | scan-shift | scan-mass | scan-selector
  std::string space = "euclidean";
  std::size_t dim = 2;
  std::string space_file;
  std::string input;
  std::string ideal_file;
  double tol = 1e-8;
  int max_iters = 200;
  std::size_t max_points = 7;
  std::uint64_t seed = 7;
  std::size_t samples = 500;
  std::size_t points = 4;
  double epsilon = 1e-2;
  double scale = 2.0;
  double horizon = 64.0;
  double classify_tol = 1e-6;
  double snap_tol = 1e-4;
  bool smoothing = true;
  unsigned threads = 1;
  std::string format = "json";
  std::string output;
};

/// Default seed, overridable through the HADAMARD_SEED environment variable.
std::uint64_t default_seed();

/// Parse argv into a RunConfig. Returns nullopt after printing help or a
/// diagnostic; `exit_code` then holds the status to return.
std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                               int& exit_code);

/// Execute a parsed configuration. The artifact goes to `config.output` (or
/// `out` when empty); a one-line summary goes to `out` when the artifact is
/// written to a file and to `err` otherwise.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hadamard::cli
