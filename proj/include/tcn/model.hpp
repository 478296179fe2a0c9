#pragma once

// Compressed shift on the model space K_B of a finite Blaschke product B,
// written in the Malmquist-Walsh orthonormal basis.

#include <cstddef>
#include <vector>

#include "tcn/linalg.hpp"

namespace tcn {

inline constexpr std::size_t kDefaultSamples = 4096;
inline constexpr std::size_t kMaxSamples = std::size_t{1} << 20;

struct ModelOperatorMatrix {
  std::vector<Complex> zeros;  // input order; fixes the basis
  Matrix matrix;
  std::size_t samples = 0;       // quadrature points actually used
  double gram_deviation = 0.0;   // max |G - I| at that sample count

  std::size_t size() const noexcept { return zeros.size(); }
  /// min |λ_j|, known by construction.
  double r_min() const;
};

/// n x m array: row k holds e_{k+1} on the m-point circle grid, where
/// e_k(z) = sqrt(1 - |λ_k|^2) / (1 - conj(λ_k) z) * prod_{j<k} b_{λ_j}(z).
/// Requires m >= 4n, m a power of two, all |λ| < 1.
Matrix malmquist_walsh_samples(const std::vector<Complex>& zeros, std::size_t m);

/// Gram matrix <e_k, e_l> of sampled basis rows by trapezoidal quadrature.
Matrix quadrature_gram(const Matrix& samples);

/// (M_B)_{lk} = <z e_k, e_l> by m-point trapezoidal quadrature. The sample
/// count is doubled (up to 2^20) until the Gram matrix is within 1e-8 of the
/// identity; AccuracyError if it is still off by more than 1e-6 at the cap.
ModelOperatorMatrix model_operator(const std::vector<Complex>& zeros,
                                   std::size_t m = kDefaultSamples);

/// r * exp(2πik/n), k = 0..n-1
std::vector<Complex> scaled_roots_of_unity(std::size_t n, double r);

struct ExtremalityReport {
  double r = 0.0;
  std::vector<Complex> zeros;
  Matrix matrix;
  std::size_t samples = 0;
  double norm = 0.0;          // ||M_B||
  double inverse_norm = 0.0;  // ||M_B^{-1}||
  double kronecker = 0.0;     // 1/r^n
  double relative_gap = 0.0;  // |inverse_norm - kronecker| / kronecker
  std::size_t defect_rank = 0;
  bool norm_is_one = false;             // | ||M_B|| - 1 | <= 1e-6
  bool inverse_matches_kronecker = false;  // relative_gap <= 1e-6

  bool holds() const noexcept { return norm_is_one && inverse_matches_kronecker; }
};

/// Builds M_B for zeros on the circle |λ| = r and compares ||M_B^{-1}|| with
/// the Kronecker bound 1/r^n. Throws DomainError if some |λ_j| differs from r
/// (relative 1e-12) or r is outside (0, 1).
ExtremalityReport verify_extremality(double r, const std::vector<Complex>& zeros,
                                     std::size_t m = kDefaultSamples);

}  // namespace tcn
