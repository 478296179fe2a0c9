#pragma once

// Condition-number brackets for b_r(M_n) and a derivative-free lower
// estimate of sup ||T^{-1}|| over analytic Toeplitz contractions.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tcn/core.hpp"

namespace tcn {

/// Absolute slack on scaled values when deciding pass/fail.
inline constexpr double kBracketTolerance = 1e-8;
/// Relative agreement required between the two inverse-norm computations.
inline constexpr double kInverseAgreement = 1e-8;

/// 1/r^n, the sup of ||T^{-1}|| over all n x n contractions with min |eigenvalue| >= r.
/// Throws DomainError unless n >= 1 and 0 < r <= 1.
double kronecker_bound(std::size_t n, double r);

/// max(r^n, 1 - r^n), the lower end of the bracket for r^n ||T_r^{-1}||.
double bracket_lower(std::size_t n, double r);

/// T_r = b_r(M_n). Throws DomainError unless n >= 1 and 0 < r < 1.
AnalyticToeplitzMatrix build_T_r(std::size_t n, double r);

struct BoundsRecord {
  std::size_t n = 0;
  double r = 0.0;
  double norm_T = 0.0;
  double inv_norm = 0.0;
  double scaled = 0.0;  // r^n * inv_norm
  double lower = 0.0;   // max(r^n, 1 - r^n)
  double upper = 1.0;
  bool pass = false;    // lower - 1e-8 <= scaled <= upper + 1e-8
  std::string error;    // set when the check threw; pass is then false
};

/// Builds T_r and computes ||T_r^{-1}|| twice: as the spectral norm of the
/// reciprocal-series matrix and by solve-based power iteration. Throws
/// ConsistencyError when they differ by more than 1e-8 relative.
BoundsRecord theorem_check(std::size_t n, double r);

struct TrendReport {
  /// Per r (grid order): scaled values non-decreasing in n, up to 1e-12.
  std::vector<double> r_values;
  std::vector<bool> nondecreasing_in_n;
  /// Per n: min and argmin over r of the scaled values.
  std::vector<std::size_t> n_values;
  std::vector<double> min_scaled_over_r;
  std::vector<double> argmin_r;
};

struct SweepResult {
  std::vector<BoundsRecord> records;  // ordered by (n, r-grid index)
  TrendReport trends;

  bool all_pass() const;
};

/// theorem_check for every n in 1..n_max and r in r_grid. Failures (including
/// thrown errors) are recorded per row and the sweep continues. Rows are
/// computed on up to `threads` workers; the output does not depend on it.
SweepResult grid_sweep(std::size_t n_max, const std::vector<double>& r_grid,
                       std::size_t threads = 1);

struct SearchConfig {
  std::uint64_t seed = 42;
  std::size_t restarts = 32;
  std::size_t iterations = 2000;  // per restart
  double initial_step = 0.1;
  double min_step = 1e-9;
  double start_offset = 0.1;  // size of the random perturbation on restarts >= 1
  std::size_t threads = 1;
};

struct SearchResult {
  std::size_t n = 0;
  double r = 0.0;
  double best_value = 0.0;  // certified lower bound on t_n^a(r)
  AnalyticPolynomial best_coeffs;
  std::size_t best_restart = 0;
  std::size_t restarts_used = 0;
  std::uint64_t seed = 0;
  double scaled_value = 0.0;   // r^n * best_value
  double kronecker_gap = 0.0;  // 1 - scaled_value
  double seed_value = 0.0;     // ||T_r^{-1}||, the value at the first start
  std::size_t evaluations = 0;
  bool budget_exhausted = false;  // some restart hit its iteration cap before the step collapsed
};

/// Maximizes ||f(M_n)^{-1}|| subject to ||f(M_n)|| <= 1 and |f_0| >= r.
///
/// Coordinate-wise complex perturbations with a step halved after every
/// sweep without improvement. Restart k starts from exp(2πik/R) b_r; restarts
/// k >= 1 add a seeded random offset. Every candidate is rescaled by
/// 1/max(1, ||f(M_n)||) and rejected if |f_0| < r - 1e-12. The winner is the
/// largest value, ties going to the lowest restart index, so the result is
/// independent of `threads`. Requires 1 <= n <= 16, 0 < r < 1.
SearchResult estimate_t_a(std::size_t n, double r, const SearchConfig& config = {});

struct RemarkRow {
  std::size_t n = 0;
  double r = 0.0;
  double estimate = 0.0;
  double scaled = 0.0;
  double gap = 0.0;  // 1 - scaled
  bool within_bracket = false;  // 1/2 - 1e-8 <= scaled <= 1 + 1e-8
};

struct RemarkReport {
  std::vector<RemarkRow> rows;  // n-major
  std::vector<double> r_values;
  std::vector<double> inf_over_n;  // per r
  std::vector<std::size_t> n_values;
  std::vector<double> inf_over_r;  // per n
};

/// Tabulates r^n * estimate over the given lists, with the two iterated
/// infima. Exploratory: nothing beyond the bracket is checked.
RemarkReport remark_scan(const std::vector<std::size_t>& n_list, const std::vector<double>& r_list,
                         const SearchConfig& config = {});

}  // namespace tcn
