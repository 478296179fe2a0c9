#pragma once

// Analytic Toeplitz matrices as the functional calculus of the nilpotent
// Jordan block M_n, plus the truncated power-series arithmetic behind it.

#include <cstddef>
#include <span>
#include <vector>

#include "tcn/linalg.hpp"

namespace tcn {

/// Coefficients (a_0, ..., a_{n-1}) of a polynomial taken modulo z^n.
///
/// Construction from a longer vector truncates; from a shorter one pads with
/// zeros. This matches f(M_n), which ignores every coefficient past n-1.
class AnalyticPolynomial {
 public:
  AnalyticPolynomial() = default;
  /// Order taken from the coefficient count.
  explicit AnalyticPolynomial(std::vector<Complex> coeffs);
  AnalyticPolynomial(std::vector<Complex> coeffs, std::size_t order);

  static AnalyticPolynomial constant(Complex c, std::size_t order);
  static AnalyticPolynomial monomial(std::size_t k, std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t k) const { return coeffs_[k]; }
  Complex& operator[](std::size_t k) { return coeffs_[k]; }

  /// Same polynomial at another truncation order.
  AnalyticPolynomial with_order(std::size_t order) const;

  /// Horner evaluation of the polynomial itself (not a series).
  Complex operator()(Complex z) const;

  AnalyticPolynomial& operator*=(Complex c);
  friend AnalyticPolynomial operator*(Complex c, AnalyticPolynomial p) { return p *= c; }
  friend bool operator==(const AnalyticPolynomial&, const AnalyticPolynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Full (untruncated) product; length a.size() + b.size() - 1.
std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b);

/// f * g mod z^n with n = f.order(); g is padded or truncated to match.
AnalyticPolynomial multiply_truncated(const AnalyticPolynomial& f, const AnalyticPolynomial& g);

/// Lower-triangular Toeplitz matrix with first column given by its symbol.
class AnalyticToeplitzMatrix {
 public:
  explicit AnalyticToeplitzMatrix(AnalyticPolynomial symbol);

  std::size_t size() const noexcept { return symbol_.order(); }
  const AnalyticPolynomial& symbol() const noexcept { return symbol_; }

  /// entry(i, j) = a_{i-j} for i >= j, else 0.
  Complex entry(std::size_t i, std::size_t j) const;
  Matrix to_matrix() const;

  /// min |eigenvalue|; the spectrum is {a_0}.
  double r_min() const;

 private:
  AnalyticPolynomial symbol_;
};

/// Full Toeplitz matrix from diagonals (a_{-n+1}, ..., a_{n-1}).
class GeneralToeplitzMatrix {
 public:
  /// `diagonals` has length 2n - 1; diagonals[n - 1] is the main diagonal.
  explicit GeneralToeplitzMatrix(std::vector<Complex> diagonals);

  std::size_t size() const noexcept { return (diagonals_.size() + 1) / 2; }
  /// entry(i, j) = a_{i-j}
  Complex entry(std::size_t i, std::size_t j) const;
  Matrix to_matrix() const;

 private:
  std::vector<Complex> diagonals_;
};

/// Nilpotent Jordan block: ones on the first subdiagonal.
Matrix jordan_block(std::size_t n);

/// phi(M_n) = sum_k phi_k M_n^k, materialized directly from the symbol.
AnalyticToeplitzMatrix apply_calculus(const AnalyticPolynomial& phi, std::size_t n);

/// True iff max |A M_n - M_n A| <= tol.
bool commutes_with_shift(const Matrix& a, double tol = 1e-12);

/// g with f g = 1 mod z^n, by the triangular recursion
/// g_0 = 1/a_0, g_k = -(sum_{j=1..k} a_j g_{k-j}) / a_0.
/// Throws SingularMatrixError when |a_0| <= 1e-14.
AnalyticPolynomial reciprocal_series(const AnalyticPolynomial& f);

/// For f g = 1 mod z^n returns h with f g + z^n h = 1, i.e. the negated tail
/// of the full product. Trailing exact zeros are dropped, so the zero
/// polynomial comes back empty. Throws ConsistencyError when the first n
/// coefficients of f g differ from (1, 0, ..., 0) by more than 1e-10.
std::vector<Complex> bezout_remainder(const AnalyticPolynomial& f, const AnalyticPolynomial& g);

/// ||A|| * ||A^{-1}||
double condition_number(const Matrix& a);

}  // namespace tcn
