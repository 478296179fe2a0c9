#include "tcn/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tcn/errors.hpp"

namespace tcn {

AnalyticPolynomial::AnalyticPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("AnalyticPolynomial: order must be >= 1");
}

AnalyticPolynomial::AnalyticPolynomial(std::vector<Complex> coeffs, std::size_t order)
    : coeffs_(std::move(coeffs)) {
  if (order == 0) throw std::invalid_argument("AnalyticPolynomial: order must be >= 1");
  coeffs_.resize(order, Complex{0.0, 0.0});
}

AnalyticPolynomial AnalyticPolynomial::constant(Complex c, std::size_t order) {
  return AnalyticPolynomial({c}, order);
}

AnalyticPolynomial AnalyticPolynomial::monomial(std::size_t k, std::size_t order) {
  std::vector<Complex> c(order);
  if (k < order) c[k] = 1.0;
  return AnalyticPolynomial(std::move(c), order);
}

AnalyticPolynomial AnalyticPolynomial::with_order(std::size_t order) const {
  return AnalyticPolynomial(coeffs_, order);
}

Complex AnalyticPolynomial::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

AnalyticPolynomial& AnalyticPolynomial::operator*=(Complex c) {
  for (auto& a : coeffs_) a *= c;
  return *this;
}

std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

AnalyticPolynomial multiply_truncated(const AnalyticPolynomial& f, const AnalyticPolynomial& g) {
  const std::size_t n = f.order();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= k && j < g.order(); ++j) out[k] += g[j] * f[k - j];
  return AnalyticPolynomial(std::move(out));
}

AnalyticToeplitzMatrix::AnalyticToeplitzMatrix(AnalyticPolynomial symbol)
    : symbol_(std::move(symbol)) {}

Complex AnalyticToeplitzMatrix::entry(std::size_t i, std::size_t j) const {
  return i >= j ? symbol_[i - j] : Complex{0.0, 0.0};
}

Matrix AnalyticToeplitzMatrix::to_matrix() const {
  const std::size_t n = size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = symbol_[i - j];
  return m;
}

double AnalyticToeplitzMatrix::r_min() const { return std::abs(symbol_[0]); }

GeneralToeplitzMatrix::GeneralToeplitzMatrix(std::vector<Complex> diagonals)
    : diagonals_(std::move(diagonals)) {
  if (diagonals_.empty() || diagonals_.size() % 2 == 0)
    throw std::invalid_argument("GeneralToeplitzMatrix: need 2n-1 diagonals");
}

Complex GeneralToeplitzMatrix::entry(std::size_t i, std::size_t j) const {
  const std::size_t n = size();
  return diagonals_[n - 1 + i - j];
}

Matrix GeneralToeplitzMatrix::to_matrix() const {
  const std::size_t n = size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(i, j);
  return m;
}

Matrix jordan_block(std::size_t n) {
  if (n == 0) throw std::invalid_argument("jordan_block: n must be >= 1");
  Matrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  return m;
}

AnalyticToeplitzMatrix apply_calculus(const AnalyticPolynomial& phi, std::size_t n) {
  return AnalyticToeplitzMatrix(phi.with_order(n));
}

bool commutes_with_shift(const Matrix& a, double tol) {
  if (!a.square()) throw std::invalid_argument("commutes_with_shift: matrix not square");
  const std::size_t n = a.rows();
  // (A M)_{ij} = A_{i,j+1},  (M A)_{ij} = A_{i-1,j}; no need to form M_n.
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex am = j + 1 < n ? a(i, j + 1) : Complex{0.0, 0.0};
      const Complex ma = i > 0 ? a(i - 1, j) : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(am - ma));
    }
  return worst <= tol;
}

AnalyticPolynomial reciprocal_series(const AnalyticPolynomial& f) {
  const Complex a0 = f[0];
  if (std::abs(a0) <= 1e-14) {
    throw SingularMatrixError("reciprocal_series: f(0) = 0, so f(M_n) is not invertible");
  }
  const std::size_t n = f.order();
  std::vector<Complex> g(n);
  g[0] = 1.0 / a0;
  for (std::size_t k = 1; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 1; j <= k; ++j) acc += f[j] * g[k - j];
    g[k] = -acc / a0;
  }
  return AnalyticPolynomial(std::move(g));
}

std::vector<Complex> bezout_remainder(const AnalyticPolynomial& f, const AnalyticPolynomial& g) {
  const std::size_t n = f.order();
  if (g.order() != n) throw std::invalid_argument("bezout_remainder: orders differ");
  const std::vector<Complex> product = convolve(f.coeffs(), g.coeffs());
  for (std::size_t k = 0; k < n; ++k) {
    const Complex expected = k == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    if (std::abs(product[k] - expected) > 1e-10) {
      throw ConsistencyError("bezout_remainder: f*g differs from 1 mod z^n at coefficient " +
                             std::to_string(k));
    }
  }
  std::vector<Complex> h;
  h.reserve(product.size() - n);
  for (std::size_t k = n; k < product.size(); ++k) h.push_back(-product[k]);
  while (!h.empty() && h.back() == Complex{0.0, 0.0}) h.pop_back();
  return h;
}

double condition_number(const Matrix& a) { return spectral_norm(a) * inverse_norm(a); }

}  // namespace tcn
