#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcn/core.hpp"
#include "tcn/linalg.hpp"

namespace tcn {

/// b_λ(z) = (λ - z) / (1 - conj(λ) z), |λ| < 1. Reduces to (r - z)/(1 - r z) for real λ.
class BlaschkeFactor {
 public:
  /// Throws DomainError unless |zero| < 1.
  explicit BlaschkeFactor(Complex zero);

  Complex zero() const noexcept { return zero_; }
  Complex operator()(Complex z) const;

  /// First n Taylor coefficients at 0:
  /// a_0 = λ, a_k = -(1 - |λ|^2) conj(λ)^{k-1}.
  AnalyticPolynomial taylor(std::size_t n) const;

  /// First n Taylor coefficients of 1/b_λ:
  /// c_0 = 1/λ, c_k = (1 - |λ|^2) / λ^{k+1}. Throws DomainError for λ = 0.
  AnalyticPolynomial reciprocal_taylor(std::size_t n) const;

 private:
  Complex zero_;
};

/// Finite product of Blaschke factors; degree = number of zeros.
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<Complex> zeros);

  std::size_t degree() const noexcept { return factors_.size(); }
  std::vector<Complex> zeros() const;
  const std::vector<BlaschkeFactor>& factors() const noexcept { return factors_; }

  Complex operator()(Complex z) const;

  /// First n Taylor coefficients of the product, mod z^n.
  AnalyticPolynomial taylor(std::size_t n) const;

 private:
  std::vector<BlaschkeFactor> factors_;
};

/// The m-point grid e^{2πik/m}, k = 0..m-1. Throws std::invalid_argument
/// unless m >= min_samples and m is a power of two.
std::vector<Complex> circle_grid(std::size_t m, std::size_t min_samples = 16);

/// |g(e^{2πik/m})| for k = 0..m-1 (m >= 16, power of two).
std::vector<double> eval_on_circle(const BlaschkeFactor& b, std::size_t m);
std::vector<double> eval_on_circle(const BlaschkeProduct& b, std::size_t m);
std::vector<double> eval_on_circle(const AnalyticPolynomial& g, std::size_t m);
/// Plain polynomial coefficients of any length (e.g. 1 - z^n h).
std::vector<double> eval_on_circle(std::span<const Complex> poly, std::size_t m);

/// Grid maximum of |g| on the circle: a lower bound on ||g||_∞, never an upper bound.
struct SupNormEstimate {
  double value;
  std::size_t samples;
};

template <typename G>
SupNormEstimate sup_norm_estimate(const G& g, std::size_t m = 4096) {
  double best = 0.0;
  for (double v : eval_on_circle(g, m)) best = v > best ? v : best;
  return {best, m};
}

}  // namespace tcn
