#include "tcn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "tcn/blaschke.hpp"
#include "tcn/errors.hpp"

namespace tcn {

double kronecker_bound(std::size_t n, double r) {
  if (n == 0) throw DomainError("kronecker_bound: n must be >= 1");
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("kronecker_bound: r must lie in (0, 1]");
  return 1.0 / std::pow(r, static_cast<double>(n));
}

double bracket_lower(std::size_t n, double r) {
  const double rn = std::pow(r, static_cast<double>(n));
  return std::max(rn, 1.0 - rn);
}

AnalyticToeplitzMatrix build_T_r(std::size_t n, double r) {
  if (n == 0) throw DomainError("build_T_r: n must be >= 1");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("build_T_r: r must lie in (0, 1)");
  return apply_calculus(BlaschkeFactor(r).taylor(n), n);
}

BoundsRecord theorem_check(std::size_t n, double r) {
  const AnalyticToeplitzMatrix t = build_T_r(n, r);
  const Matrix dense = t.to_matrix();

  BoundsRecord rec;
  rec.n = n;
  rec.r = r;
  rec.norm_T = spectral_norm(dense);

  const double via_series = spectral_norm(apply_calculus(reciprocal_series(t.symbol()), n).to_matrix());
  const double via_solve = inverse_norm(dense);
  if (std::abs(via_series - via_solve) > kInverseAgreement * std::max(via_series, via_solve)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "theorem_check(n=" << n << ", r=" << r << "): inverse norms disagree, series "
        << via_series << " vs solve " << via_solve;
    throw ConsistencyError(msg.str());
  }

  rec.inv_norm = via_series;
  rec.scaled = std::pow(r, static_cast<double>(n)) * rec.inv_norm;
  rec.lower = bracket_lower(n, r);
  rec.upper = 1.0;
  rec.pass = rec.lower - kBracketTolerance <= rec.scaled && rec.scaled <= rec.upper + kBracketTolerance;
  return rec;
}

bool SweepResult::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const BoundsRecord& r) { return r.pass; });
}

SweepResult grid_sweep(std::size_t n_max, const std::vector<double>& r_grid, std::size_t threads) {
  if (n_max == 0 || n_max > 64) throw std::invalid_argument("grid_sweep: n_max must lie in 1..64");
  const std::size_t nr = r_grid.size();

  SweepResult out;
  out.records.resize(n_max * nr);
  detail::parallel_for(out.records.size(), threads, [&](std::size_t idx) {
    const std::size_t n = idx / nr + 1;
    const double r = r_grid[idx % nr];
    BoundsRecord& slot = out.records[idx];
    try {
      slot = theorem_check(n, r);
    } catch (const std::exception& e) {
      slot = BoundsRecord{};
      slot.n = n;
      slot.r = r;
      slot.error = e.what();
      slot.pass = false;
    }
  });

  TrendReport& tr = out.trends;
  tr.r_values = r_grid;
  for (std::size_t j = 0; j < nr; ++j) {
    bool monotone = true;
    for (std::size_t n = 1; n < n_max; ++n) {
      const auto& a = out.records[(n - 1) * nr + j];
      const auto& b = out.records[n * nr + j];
      if (a.error.empty() && b.error.empty() && b.scaled < a.scaled - 1e-12) monotone = false;
    }
    tr.nondecreasing_in_n.push_back(monotone);
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    double best = std::numeric_limits<double>::infinity();
    double arg = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = 0; j < nr; ++j) {
      const auto& rec = out.records[(n - 1) * nr + j];
      if (rec.error.empty() && rec.scaled < best) {
        best = rec.scaled;
        arg = rec.r;
      }
    }
    tr.n_values.push_back(n);
    tr.min_scaled_over_r.push_back(best);
    tr.argmin_r.push_back(arg);
  }
  return out;
}

}  // namespace tcn
