#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

#include "parallel.hpp"
#include "tcn/blaschke.hpp"
#include "tcn/bounds.hpp"
#include "tcn/errors.hpp"

namespace tcn {

namespace {

constexpr double kModulusSlack = 1e-12;

// std::uniform_real_distribution is implementation-defined; this is not.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

struct Candidate {
  AnalyticPolynomial coeffs;
  double value;
};

// Power iteration underestimates σ_max when the top singular values cluster,
// and the search drifts toward exactly such points, so the constraint side
// uses a dense SVD.
double feasibility_norm(const AnalyticPolynomial& f) {
  const std::size_t n = f.order();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[i - j];
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

// Rescales into the unit ball and scores; nullopt when infeasible.
std::optional<Candidate> evaluate(AnalyticPolynomial f, double r) {
  try {
    const double norm = feasibility_norm(f);
    if (!std::isfinite(norm)) return std::nullopt;
    f *= 1.0 / std::max(1.0, norm);
    if (std::abs(f[0]) < r - kModulusSlack) return std::nullopt;
    const double value = spectral_norm(AnalyticToeplitzMatrix(reciprocal_series(f)).to_matrix());
    if (!std::isfinite(value)) return std::nullopt;
    return Candidate{std::move(f), value};
  } catch (const NonConvergenceError&) {
    return std::nullopt;
  } catch (const SingularMatrixError&) {
    return std::nullopt;
  }
}

struct RestartOutcome {
  std::optional<Candidate> best;
  double start_value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

RestartOutcome run_restart(std::size_t n, double r, const SearchConfig& cfg, std::size_t index) {
  RestartOutcome out;
  std::mt19937_64 rng = restart_rng(cfg.seed, index);

  const double theta = 2.0 * std::numbers::pi * static_cast<double>(index) /
                       static_cast<double>(cfg.restarts);
  const AnalyticPolynomial rotated = std::polar(1.0, theta) * BlaschkeFactor(r).taylor(n);

  std::optional<Candidate> current;
  if (index > 0) {
    AnalyticPolynomial start = rotated;
    for (std::size_t k = 0; k < n; ++k) {
      const double re = 2.0 * uniform01(rng) - 1.0;
      const double im = 2.0 * uniform01(rng) - 1.0;
      start[k] += cfg.start_offset * Complex{re, im};
    }
    current = evaluate(std::move(start), r);
    ++out.evaluations;
  }
  if (!current) {
    current = evaluate(rotated, r);
    ++out.evaluations;
  }
  if (!current) return out;
  out.start_value = current->value;

  double step = cfg.initial_step;
  bool improved_this_sweep = false;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const std::size_t k = it % n;
    const Complex delta = std::polar(step, 2.0 * std::numbers::pi * uniform01(rng));
    for (const double sign : {1.0, -1.0}) {
      AnalyticPolynomial trial = current->coeffs;
      trial[k] += sign * delta;
      auto scored = evaluate(std::move(trial), r);
      ++out.evaluations;
      if (scored && scored->value > current->value) {
        current = std::move(scored);
        improved_this_sweep = true;
        break;
      }
    }
    if (k + 1 == n) {
      if (!improved_this_sweep) step *= 0.5;
      improved_this_sweep = false;
      if (step < cfg.min_step) {
        out.converged = true;
        break;
      }
    }
  }
  out.best = std::move(current);
  return out;
}

}  // namespace

SearchResult estimate_t_a(std::size_t n, double r, const SearchConfig& config) {
  if (n == 0 || n > 16) throw DomainError("estimate_t_a: n must lie in 1..16");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("estimate_t_a: r must lie in (0, 1)");
  if (config.restarts == 0) throw std::invalid_argument("estimate_t_a: need at least one restart");

  std::vector<RestartOutcome> outcomes(config.restarts);
  detail::parallel_for(config.restarts, config.threads,
                       [&](std::size_t i) { outcomes[i] = run_restart(n, r, config, i); });

  SearchResult res;
  res.n = n;
  res.r = r;
  res.seed = config.seed;
  res.restarts_used = config.restarts;
  res.seed_value = outcomes.front().start_value;
  const Candidate* winner = nullptr;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    res.evaluations += o.evaluations;
    if (o.best && !o.converged) res.budget_exhausted = true;
    // Strict comparison keeps the lowest index on ties.
    if (o.best && (winner == nullptr || o.best->value > winner->value)) {
      winner = &*o.best;
      res.best_restart = i;
    }
  }
  if (winner == nullptr) {
    throw ConsistencyError("estimate_t_a: no feasible candidate, although b_r is always feasible");
  }
  res.best_value = winner->value;
  res.best_coeffs = winner->coeffs;
  res.scaled_value = std::pow(r, static_cast<double>(n)) * res.best_value;
  res.kronecker_gap = 1.0 - res.scaled_value;
  return res;
}

RemarkReport remark_scan(const std::vector<std::size_t>& n_list, const std::vector<double>& r_list,
                         const SearchConfig& config) {
  RemarkReport rep;
  rep.n_values = n_list;
  rep.r_values = r_list;
  rep.inf_over_n.assign(r_list.size(), std::numeric_limits<double>::infinity());
  rep.inf_over_r.assign(n_list.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n_list.size(); ++i)
    for (std::size_t j = 0; j < r_list.size(); ++j) {
      const SearchResult s = estimate_t_a(n_list[i], r_list[j], config);
      RemarkRow row;
      row.n = s.n;
      row.r = s.r;
      row.estimate = s.best_value;
      row.scaled = s.scaled_value;
      row.gap = s.kronecker_gap;
      row.within_bracket = row.scaled >= 0.5 - kBracketTolerance && row.scaled <= 1.0 + kBracketTolerance;
      rep.inf_over_n[j] = std::min(rep.inf_over_n[j], row.scaled);
      rep.inf_over_r[i] = std::min(rep.inf_over_r[i], row.scaled);
      rep.rows.push_back(row);
    }
  return rep;
}

}  // namespace tcn
