#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tcn/blaschke.hpp"
#include "tcn/core.hpp"
#include "tcn/errors.hpp"
#include "tcn/model.hpp"

using namespace tcn;

namespace {

double upper_part(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

std::vector<Complex> random_zeros(std::mt19937_64& rng, std::size_t n) {
  std::vector<Complex> z(n);
  for (auto& v : z) v = oracle::random_in_disk(rng, 0.9);
  return z;
}

}  // namespace

TEST_CASE("Malmquist-Walsh samples for a single zero") {
  const Matrix at_zero = malmquist_walsh_samples({0.0}, 64);
  for (std::size_t s = 0; s < 64; ++s) CHECK(std::abs(at_zero(0, s) - 1.0) < 1e-15);

  const Matrix half = malmquist_walsh_samples({0.5}, 64);
  const auto grid = circle_grid(64);
  for (std::size_t s = 0; s < 64; ++s)
    CHECK(std::abs(half(0, s) - std::sqrt(0.75) / (1.0 - 0.5 * grid[s])) < 1e-14);
}

TEST_CASE("Malmquist-Walsh basis is orthonormal under quadrature") {
  std::mt19937_64 rng(6);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Matrix gram = quadrature_gram(malmquist_walsh_samples(random_zeros(rng, n), 4096));
    CHECK((gram - Matrix::identity(n)).max_abs() <= 1e-8);
  }
}

TEST_CASE("malmquist_walsh_samples preconditions") {
  CHECK_THROWS_AS((void)malmquist_walsh_samples({1.0}, 64), DomainError);
  CHECK_THROWS_AS((void)malmquist_walsh_samples({0.1, 0.2, 0.3}, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)malmquist_walsh_samples({0.1}, 100), std::invalid_argument);
  CHECK_THROWS_AS((void)malmquist_walsh_samples({}, 64), std::invalid_argument);
}

TEST_CASE("model operator of one zero is the 1x1 matrix (λ)") {
  for (Complex lambda : {Complex{0.5, 0.0}, Complex{-0.2, 0.7}, Complex{0.0, 0.0}}) {
    const auto m = model_operator({lambda});
    REQUIRE(m.matrix.rows() == 1);
    CHECK(std::abs(m.matrix(0, 0) - lambda) < 1e-12);
  }
}

TEST_CASE("model operator of z^n is the Jordan block up to a diagonal sign change") {
  // With b_0(z) = -z the basis is ((-z)^k), so M_B = D M_n D, D = diag((-1)^k).
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto m = model_operator(std::vector<Complex>(n, 0.0), 64);
    std::vector<Complex> signs(n);
    for (std::size_t k = 0; k < n; ++k) signs[k] = k % 2 == 0 ? 1.0 : -1.0;
    const Matrix d = Matrix::diagonal(signs);
    CHECK((d * m.matrix * d - jordan_block(n)).max_abs() < 1e-14);
  }
}

TEST_CASE("model operator for zeros (1/2, -1/2)") {
  const auto m = model_operator({0.5, -0.5});
  CHECK(upper_part(m.matrix) <= 1e-8);
  CHECK(std::abs(m.matrix(0, 0) - 0.5) < 1e-10);
  CHECK(std::abs(m.matrix(1, 1) + 0.5) < 1e-10);
  CHECK(spectral_norm(m.matrix) <= 1.0 + 1e-8);
  CHECK(defect_rank(m.matrix, 1e-8) == 1);
  // |B(0)| = 1/4 is the smallest singular value, the rest equal 1.
  const auto sv = oracle::singular_values(m.matrix);
  CHECK(std::abs(sv[0] - 1.0) < 1e-10);
  CHECK(std::abs(sv[1] - 0.25) < 1e-10);

  const Vector e1{1.0, 0.0};
  const Vector x = solve(m.matrix, e1);
  const Vector back = m.matrix.apply(x);
  CHECK(std::abs(back[0] - 1.0) < 1e-12);
  CHECK(std::abs(back[1]) < 1e-12);
}

TEST_CASE("random model operators: triangular, contractive, one-dimensional defect") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto zeros = random_zeros(rng, n);
    const auto m = model_operator(zeros);
    CHECK(m.gram_deviation <= 1e-8);
    CHECK(upper_part(m.matrix) <= 1e-8);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(m.matrix(k, k) - zeros[k]) <= 1e-8);
    CHECK(spectral_norm(m.matrix) <= 1.0 + 1e-8);
    CHECK(defect_rank(m.matrix, 1e-8) == 1);
    const auto defect = oracle::defect_singular_values(m.matrix);
    CHECK(defect[0] == doctest::Approx(1.0 - std::norm(BlaschkeProduct(zeros)(0.0))).epsilon(1e-9));
    CHECK(m.r_min() <= 0.9);
  }
}

TEST_CASE("repeated zeros are allowed") {
  const auto m = model_operator({0.4, 0.4, 0.4});
  CHECK(upper_part(m.matrix) <= 1e-8);
  CHECK(defect_rank(m.matrix, 1e-8) == 1);
  // Same spectrum and norms as b_{0.4}(M_3).
  CHECK(inverse_norm(m.matrix) == doctest::Approx(1.0 / (0.4 * 0.4 * 0.4)).epsilon(1e-9));
}

TEST_CASE("verify_extremality") {
  const auto one = verify_extremality(0.5, {0.5});
  CHECK(one.inverse_norm == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(one.inverse_matches_kronecker);
  CHECK(one.norm == doctest::Approx(0.5).epsilon(1e-12));  // a 1x1 matrix cannot reach norm 1
  CHECK_FALSE(one.norm_is_one);

  const auto two = verify_extremality(0.5, {0.5, -0.5});
  CHECK(std::abs(two.inverse_norm - 4.0) <= 4e-6);
  CHECK(two.holds());
  CHECK(two.defect_rank == 1);

  const auto three = verify_extremality(0.6, scaled_roots_of_unity(3, 0.6));
  CHECK(std::abs(three.inverse_norm - 1.0 / 0.216) <= 1e-6 / 0.216);
  CHECK(three.holds());

  CHECK_THROWS_AS((void)verify_extremality(0.5, {0.5, 0.4}), DomainError);
  CHECK_THROWS_AS((void)verify_extremality(1.0, {0.5}), DomainError);
}

TEST_CASE("defect vanishes in the unitary limit") {
  const auto m = model_operator(scaled_roots_of_unity(2, 0.999));
  CHECK(m.samples > kDefaultSamples);  // peaky integrands force refinement
  const auto defect = defect_singular_values(m.matrix, 1e-12);
  REQUIRE(defect.size() == 1);
  CHECK(defect[0] < 1e-2);
}

TEST_CASE("quadrature gives up near the circle") {
  CHECK_THROWS_AS((void)model_operator({0.999999}), AccuracyError);
}
