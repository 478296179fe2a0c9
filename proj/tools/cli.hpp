#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tcn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
};

/// Parses "start:stop:step" into start, start + step, ..., stop (inclusive up
/// to 1e-9 slack). Throws std::invalid_argument unless 0 < start <= stop < 1
/// and step > 0.
std::vector<double> parse_grid(const std::string& spec);

/// Parses a comma-separated list of positive integers ("1,2,3").
std::vector<std::size_t> parse_size_list(const std::string& spec);

/// "%.17g": round-trip safe decimal.
std::string format_real(double v);

/// Worker count: hardware concurrency, capped by TCN_THREADS when set.
std::size_t worker_count();

/// Runs the tool. args[0] is the program name. Reports go to `out` (or the
/// --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcn::cli
