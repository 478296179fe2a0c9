#include "tcn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tcn/errors.hpp"

namespace tcn {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("Matrix: entries length " + std::to_string(entries_.size()) +
                                " does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Vector Matrix::apply(std::span<const Complex> x) const {
  if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
  Vector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc{0.0, 0.0};
    const Complex* row = entries_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Vector Matrix::apply_adjoint(std::span<const Complex> x) const {
  if (x.size() != rows_) throw std::invalid_argument("Matrix::apply_adjoint: dimension mismatch");
  Vector y(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const Complex* row = entries_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) y[j] += std::conj(row[j]) * x[i];
  }
  return y;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("Matrix +=: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("Matrix -=: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex c, Matrix a) { return a *= c; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix *: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix power(const Matrix& a, unsigned k) {
  if (!a.square()) throw std::invalid_argument("power: matrix not square");
  Matrix result = Matrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) result = result * a;
  return result;
}

double norm2(std::span<const Complex> x) {
  // Scaled accumulation keeps entries near 1e+/-160 from overflowing.
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (const auto& v : x) sum += std::norm(v / scale);
  return scale * std::sqrt(sum);
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

namespace {

void scale_in_place(Vector& v, double s) {
  for (auto& e : v) e *= s;
}

void orthogonalize(Vector& v, const std::vector<Vector>& basis) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) {
      const Complex c = dot(q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
}

Vector ones(std::size_t n) { return Vector(n, Complex{1.0, 0.0}); }

Vector ramp(std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

struct DominantPair {
  double value;
  Vector vector;
};

// Dominant eigenpair of a Hermitian positive semidefinite operator restricted
// to the orthogonal complement of `basis`.
template <typename Apply>
DominantPair dominant_eigenpair(Apply&& apply, std::size_t n, const PowerIterationOptions& opts,
                                const std::vector<Vector>& basis = {}, double abs_tol = 0.0) {
  std::vector<Vector> starts{ones(n), ramp(n)};
  for (std::size_t j = 0; j < n && !basis.empty(); ++j) {
    Vector e(n);
    e[j] = 1.0;
    starts.push_back(std::move(e));
  }

  // Only one restart is used when the first start stagnates at zero; the
  // coordinate vectors are extra fallbacks for deflated subspaces.
  std::size_t next_start = 0;
  auto take_start = [&]() -> Vector {
    while (next_start < starts.size()) {
      Vector v = starts[next_start++];
      orthogonalize(v, basis);
      const double nv = norm2(v);
      if (nv > 1e-8 * std::sqrt(static_cast<double>(n))) {
        scale_in_place(v, 1.0 / nv);
        return v;
      }
    }
    return {};
  };

  Vector v = take_start();
  if (v.empty()) return {0.0, Vector(n)};
  bool restarted = false;
  double mu_prev = 0.0;
  double mu = 0.0;
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    Vector w = apply(v);
    if (!basis.empty()) orthogonalize(w, basis);
    mu = dot(v, w).real();
    const double nw = norm2(w);
    if (nw == 0.0) {
      if (restarted) return {0.0, v};
      restarted = true;
      v = take_start();
      if (v.empty()) return {0.0, Vector(n)};
      mu_prev = 0.0;
      continue;
    }
    if (!std::isfinite(nw)) {
      throw NonConvergenceError("power iteration diverged (non-finite iterate)", mu);
    }
    scale_in_place(w, 1.0 / nw);
    v = std::move(w);
    if (it > 0 && std::abs(mu - mu_prev) <= opts.tol * std::abs(mu) + abs_tol) {
      return {std::max(mu, 0.0), v};
    }
    mu_prev = mu;
  }
  throw NonConvergenceError("power iteration did not converge in " +
                                std::to_string(opts.max_iter) + " iterations",
                            std::sqrt(std::max(mu, 0.0)));
}

bool is_lower_triangular(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != Complex{0.0, 0.0}) return false;
  return true;
}

}  // namespace

double spectral_norm(const Matrix& a, PowerIterationOptions opts) {
  if (a.empty()) throw std::invalid_argument("spectral_norm: empty matrix");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");
  auto apply = [&](const Vector& v) { return a.apply_adjoint(a.apply(v)); };
  return std::sqrt(dominant_eigenpair(apply, a.cols(), opts).value);
}

LuFactorization::LuFactorization(const Matrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (!a.square()) throw std::invalid_argument("LuFactorization: matrix not square");
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

  if (is_lower_triangular(a)) {
    // Already factored: L = A, U = I. Row exchanges would destroy the
    // triangular structure, so only the diagonal is checked.
    for (std::size_t k = 0; k < n_; ++k)
      if (std::abs(a(k, k)) < kPivotThreshold)
        throw SingularMatrixError("singular matrix: diagonal entry " + std::to_string(k) +
                                  " below pivot threshold");
    lower_only_ = true;
    return;
  }

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < kPivotThreshold) {
      throw SingularMatrixError("singular matrix: pivot " + std::to_string(k) +
                                " below threshold");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const Complex factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == Complex{0.0, 0.0}) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

Vector LuFactorization::solve(std::span<const Complex> b) const {
  if (b.size() != n_) throw std::invalid_argument("solve: dimension mismatch");
  Vector x(n_);
  if (lower_only_) {
    for (std::size_t i = 0; i < n_; ++i) {
      Complex acc = b[i];
      for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
      x[i] = acc / lu_(i, i);
    }
    return x;
  }
  // P A = L U; forward with unit L, then back with U.
  for (std::size_t i = 0; i < n_; ++i) {
    Complex acc = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
    x[i] = acc;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    Complex acc = x[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) acc -= lu_(ii, j) * x[j];
    x[ii] = acc / lu_(ii, ii);
  }
  return x;
}

Vector LuFactorization::solve_adjoint(std::span<const Complex> b) const {
  if (b.size() != n_) throw std::invalid_argument("solve_adjoint: dimension mismatch");
  if (lower_only_) {
    // A^H is upper triangular.
    Vector x(n_);
    for (std::size_t ii = n_; ii-- > 0;) {
      Complex acc = b[ii];
      for (std::size_t j = ii + 1; j < n_; ++j) acc -= std::conj(lu_(j, ii)) * x[j];
      x[ii] = acc / std::conj(lu_(ii, ii));
    }
    return x;
  }
  // A^H = U^H L^H P, so solve U^H y = b, L^H z = y, x = P^T z.
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n_; ++i) {
    Complex acc = y[i];
    for (std::size_t j = 0; j < i; ++j) acc -= std::conj(lu_(j, i)) * y[j];
    y[i] = acc / std::conj(lu_(i, i));
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    Complex acc = y[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) acc -= std::conj(lu_(j, ii)) * y[j];
    y[ii] = acc;
  }
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
  return x;
}

Vector solve(const Matrix& a, std::span<const Complex> b) { return LuFactorization(a).solve(b); }

Vector solve_adjoint(const Matrix& a, std::span<const Complex> b) {
  return LuFactorization(a).solve_adjoint(b);
}

double inverse_norm(const Matrix& a, PowerIterationOptions opts) {
  if (!a.square() || a.empty()) throw std::invalid_argument("inverse_norm: matrix not square");
  const LuFactorization lu(a);
  auto apply = [&](const Vector& v) { return lu.solve_adjoint(lu.solve(v)); };
  return std::sqrt(dominant_eigenpair(apply, a.rows(), opts).value);
}

std::vector<double> defect_singular_values(const Matrix& a, double tol, PowerIterationOptions opts) {
  if (!a.square() || a.empty()) throw std::invalid_argument("defect_rank: matrix not square");
  const std::size_t n = a.rows();
  const Matrix defect = Matrix::identity(n) - a.adjoint() * a;
  // Singular values of a Hermitian matrix are |eigenvalues|; iterate with D^H D = D^2.
  auto apply = [&](const Vector& v) { return defect.apply_adjoint(defect.apply(v)); };

  std::vector<double> values;
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < n; ++k) {
    // Eigenvalues far below tol^2 only need to be resolved coarsely.
    auto [mu, v] = dominant_eigenpair(apply, n, opts, basis, 1e-6 * tol * tol);
    const double sigma = std::sqrt(mu);
    if (sigma <= tol) break;
    values.push_back(sigma);
    orthogonalize(v, basis);
    const double nv = norm2(v);
    if (nv == 0.0) break;
    scale_in_place(v, 1.0 / nv);
    basis.push_back(std::move(v));
  }
  return values;
}

std::size_t defect_rank(const Matrix& a, double tol) { return defect_singular_values(a, tol).size(); }

}  // namespace tcn
