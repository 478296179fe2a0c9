#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tcn {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return entries_; }

  Matrix adjoint() const;
  Matrix transpose() const;

  /// y = A x
  Vector apply(std::span<const Complex> x) const;
  /// y = A^H x
  Vector apply_adjoint(std::span<const Complex> x) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex c);

  /// max |a_ij|
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex c, Matrix a);

/// A^k for square A, k >= 0.
Matrix power(const Matrix& a, unsigned k);

double norm2(std::span<const Complex> x);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);  // x^H y

struct PowerIterationOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100000;
};

/// Largest singular value by power iteration on A^H A.
///
/// Starts from the normalized all-ones vector. If the iterate collapses to
/// zero (start orthogonal to the dominant subspace) it restarts once from
/// (1, 2, ..., n). Converged when successive Rayleigh quotients agree to a
/// relative `tol`. Throws NonConvergenceError after `max_iter` steps.
double spectral_norm(const Matrix& a, PowerIterationOptions opts = {});

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot magnitude falls below 1e-14.
/// An exactly lower-triangular A is solved by forward substitution with its
/// own diagonal as pivots (no row exchanges).
Vector solve(const Matrix& a, std::span<const Complex> b);

/// Solves A^H x = b with the same pivoting rule as solve().
Vector solve_adjoint(const Matrix& a, std::span<const Complex> b);

/// LU factorization with partial pivoting, reused across many solves.
class LuFactorization {
 public:
  explicit LuFactorization(const Matrix& a);

  std::size_t size() const noexcept { return n_; }
  Vector solve(std::span<const Complex> b) const;
  Vector solve_adjoint(std::span<const Complex> b) const;

  static constexpr double kPivotThreshold = 1e-14;

 private:
  std::size_t n_;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool lower_only_ = false;
};

/// ||A^{-1}|| = 1 / sigma_min(A). Power iteration in which every application of
/// A^{-1} and A^{-H} is a linear solve; A^{-1} is never formed.
double inverse_norm(const Matrix& a, PowerIterationOptions opts = {});

/// Singular values of I - A^H A that exceed `tol`, in decreasing order.
/// Found one at a time by power iteration, each pass orthogonalized against
/// the eigenvectors already extracted.
std::vector<double> defect_singular_values(const Matrix& a, double tol = 1e-8,
                                           PowerIterationOptions opts = {});

/// Number of singular values of I - A^H A above `tol`.
std::size_t defect_rank(const Matrix& a, double tol = 1e-8);

}  // namespace tcn
