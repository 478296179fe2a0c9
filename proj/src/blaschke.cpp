#include "tcn/blaschke.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tcn/errors.hpp"

namespace tcn {

BlaschkeFactor::BlaschkeFactor(Complex zero) : zero_(zero) {
  if (!(std::abs(zero) < 1.0)) {
    throw DomainError("Blaschke zero must lie in the open unit disk, got |λ| = " +
                      std::to_string(std::abs(zero)));
  }
}

Complex BlaschkeFactor::operator()(Complex z) const {
  return (zero_ - z) / (1.0 - std::conj(zero_) * z);
}

AnalyticPolynomial BlaschkeFactor::taylor(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("taylor: n must be >= 1");
  std::vector<Complex> a(n);
  a[0] = zero_;
  const Complex conj_zero = std::conj(zero_);
  const double defect = 1.0 - std::norm(zero_);
  Complex p{1.0, 0.0};  // conj(λ)^{k-1}
  for (std::size_t k = 1; k < n; ++k) {
    a[k] = -defect * p;
    p *= conj_zero;
  }
  return AnalyticPolynomial(std::move(a));
}

AnalyticPolynomial BlaschkeFactor::reciprocal_taylor(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("reciprocal_taylor: n must be >= 1");
  if (zero_ == Complex{0.0, 0.0}) {
    throw DomainError("reciprocal_taylor: b_0(0) = 0, the reciprocal has a pole at 0");
  }
  std::vector<Complex> c(n);
  const Complex inv = 1.0 / zero_;
  const double defect = 1.0 - std::norm(zero_);
  c[0] = inv;
  Complex p = inv * inv;  // λ^{-(k+1)}
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = defect * p;
    p *= inv;
  }
  return AnalyticPolynomial(std::move(c));
}

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros) {
  factors_.reserve(zeros.size());
  for (const auto& z : zeros) factors_.emplace_back(z);
}

std::vector<Complex> BlaschkeProduct::zeros() const {
  std::vector<Complex> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.zero());
  return out;
}

Complex BlaschkeProduct::operator()(Complex z) const {
  Complex acc{1.0, 0.0};
  for (const auto& f : factors_) acc *= f(z);
  return acc;
}

AnalyticPolynomial BlaschkeProduct::taylor(std::size_t n) const {
  AnalyticPolynomial acc = AnalyticPolynomial::constant(1.0, n);
  for (const auto& f : factors_) acc = multiply_truncated(acc, f.taylor(n));
  return acc;
}

std::vector<Complex> circle_grid(std::size_t m, std::size_t min_samples) {
  if (m < min_samples || !std::has_single_bit(m)) {
    throw std::invalid_argument("sample count must be a power of two >= " +
                                std::to_string(min_samples) + ", got " + std::to_string(m));
  }
  std::vector<Complex> z(m);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) z[k] = std::polar(1.0, step * static_cast<double>(k));
  return z;
}

namespace {

template <typename F>
std::vector<double> moduli_on_circle(F&& f, std::size_t m) {
  const auto grid = circle_grid(m);
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = std::abs(f(grid[k]));
  return out;
}

}  // namespace

std::vector<double> eval_on_circle(const BlaschkeFactor& b, std::size_t m) {
  return moduli_on_circle(b, m);
}

std::vector<double> eval_on_circle(const BlaschkeProduct& b, std::size_t m) {
  return moduli_on_circle(b, m);
}

std::vector<double> eval_on_circle(const AnalyticPolynomial& g, std::size_t m) {
  return moduli_on_circle(g, m);
}

std::vector<double> eval_on_circle(std::span<const Complex> poly, std::size_t m) {
  return moduli_on_circle(
      [poly](Complex z) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = poly.size(); k-- > 0;) acc = acc * z + poly[k];
        return acc;
      },
      m);
}

}  // namespace tcn
