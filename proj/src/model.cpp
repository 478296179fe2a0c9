#include "tcn/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tcn/blaschke.hpp"
#include "tcn/errors.hpp"

namespace tcn {

double ModelOperatorMatrix::r_min() const {
  double r = 1.0;
  for (const auto& z : zeros) r = std::min(r, std::abs(z));
  return r;
}

Matrix malmquist_walsh_samples(const std::vector<Complex>& zeros, std::size_t m) {
  if (zeros.empty()) throw std::invalid_argument("malmquist_walsh_samples: no zeros");
  const BlaschkeProduct product(zeros);  // validates |λ| < 1
  const std::size_t n = zeros.size();
  const auto grid = circle_grid(m, 4 * n);

  Matrix samples(n, m);
  std::vector<Complex> partial(m, Complex{1.0, 0.0});  // prod_{j<k} b_{λ_j} on the grid
  for (std::size_t k = 0; k < n; ++k) {
    const auto& factor = product.factors()[k];
    const Complex lambda = factor.zero();
    const double scale = std::sqrt(1.0 - std::norm(lambda));
    for (std::size_t s = 0; s < m; ++s) {
      const Complex z = grid[s];
      samples(k, s) = scale / (1.0 - std::conj(lambda) * z) * partial[s];
      partial[s] *= factor(z);
    }
  }
  return samples;
}

Matrix quadrature_gram(const Matrix& samples) {
  const std::size_t n = samples.rows();
  const std::size_t m = samples.cols();
  Matrix gram(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Complex acc{0.0, 0.0};
      for (std::size_t s = 0; s < m; ++s) acc += samples(k, s) * std::conj(samples(l, s));
      gram(k, l) = acc / static_cast<double>(m);
    }
  return gram;
}

namespace {

Matrix compressed_shift(const Matrix& samples) {
  const std::size_t n = samples.rows();
  const std::size_t m = samples.cols();
  const auto grid = circle_grid(m, 1);
  Matrix out(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc{0.0, 0.0};
      for (std::size_t s = 0; s < m; ++s)
        acc += grid[s] * samples(k, s) * std::conj(samples(l, s));
      out(l, k) = acc / static_cast<double>(m);
    }
  return out;
}

}  // namespace

ModelOperatorMatrix model_operator(const std::vector<Complex>& zeros, std::size_t m) {
  constexpr double kTargetDeviation = 1e-8;
  constexpr double kMaxDeviation = 1e-6;

  std::size_t samples_used = m;
  Matrix samples = malmquist_walsh_samples(zeros, samples_used);
  double deviation = (quadrature_gram(samples) - Matrix::identity(zeros.size())).max_abs();
  while (deviation > kTargetDeviation && samples_used < kMaxSamples) {
    samples_used *= 2;
    samples = malmquist_walsh_samples(zeros, samples_used);
    deviation = (quadrature_gram(samples) - Matrix::identity(zeros.size())).max_abs();
  }
  if (deviation > kMaxDeviation) {
    std::ostringstream msg;
    msg << "model_operator: Gram deviation " << deviation << " at m = " << samples_used
        << "; zeros are too close to the unit circle, use a larger sample count";
    throw AccuracyError(msg.str());
  }
  return ModelOperatorMatrix{zeros, compressed_shift(samples), samples_used, deviation};
}

std::vector<Complex> scaled_roots_of_unity(std::size_t n, double r) {
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  return out;
}

ExtremalityReport verify_extremality(double r, const std::vector<Complex>& zeros, std::size_t m) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("verify_extremality: r must lie in (0, 1)");
  if (zeros.empty()) throw std::invalid_argument("verify_extremality: no zeros");
  for (const auto& z : zeros)
    if (std::abs(std::abs(z) - r) > 1e-12 * r)
      throw DomainError("verify_extremality: every zero must satisfy |λ| = r");

  const ModelOperatorMatrix model = model_operator(zeros, m);
  ExtremalityReport report;
  report.r = r;
  report.zeros = zeros;
  report.matrix = model.matrix;
  report.samples = model.samples;
  report.norm = spectral_norm(model.matrix);
  report.inverse_norm = inverse_norm(model.matrix);
  report.kronecker = 1.0 / std::pow(r, static_cast<double>(zeros.size()));
  report.relative_gap = std::abs(report.inverse_norm - report.kronecker) / report.kronecker;
  report.defect_rank = defect_rank(model.matrix, 1e-8);
  report.norm_is_one = std::abs(report.norm - 1.0) <= 1e-6;
  report.inverse_matches_kronecker = report.relative_gap <= 1e-6;
  return report;
}

}  // namespace tcn
