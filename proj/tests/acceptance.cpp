// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "tcn/blaschke.hpp"
#include "tcn/bounds.hpp"
#include "tcn/core.hpp"
#include "tcn/model.hpp"

using namespace tcn;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!pass) detail << "; ";
    pass = false;
    detail << what;
  }
};

int failures = 0;

void report(int id, const char* title, Outcome& o, const std::string& summary) {
  std::printf("AC%d %s  %s  %s%s%s\n", id, o.pass ? "PASS" : "FAIL", title, summary.c_str(),
              o.pass ? "" : "  failures: ", o.pass ? "" : o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(double v) { return cli::format_real(v); }

std::vector<double> r_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 19; ++k) g.push_back(0.05 * k);
  return g;
}

void ac1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const SweepResult sweep = grid_sweep(12, r_grid(), 1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst_norm = 0.0;
  double min_margin = 1.0;
  for (const auto& rec : sweep.records) {
    const std::string at = "n=" + std::to_string(rec.n) + " r=" + fmt(rec.r);
    if (!rec.error.empty()) {
      o.fail(at + " error " + rec.error);
      continue;
    }
    worst_norm = std::max(worst_norm, rec.norm_T);
    if (rec.norm_T > 1.0 + 1e-8) o.fail(at + " norm_T=" + fmt(rec.norm_T));
    const double lower = std::max(std::pow(rec.r, static_cast<double>(rec.n)),
                                  1.0 - std::pow(rec.r, static_cast<double>(rec.n)));
    if (rec.scaled < lower - 1e-8 || rec.scaled > 1.0 + 1e-8) o.fail(at + " scaled=" + fmt(rec.scaled));
    min_margin = std::min(min_margin, rec.scaled - lower);
  }
  if (sweep.records.size() != 12 * 19) o.fail("expected 228 grid points");
  if (seconds >= 10.0) o.fail("runtime " + fmt(seconds) + " s");
  report(1, "theorem bracket on n<=12, r in 0.05..0.95", o,
         std::to_string(sweep.records.size()) + " points, max norm_T=" + fmt(worst_norm) +
             ", min(scaled - lower)=" + fmt(min_margin) + ", " + fmt(seconds) + " s single-threaded");
}

void ac2() {
  Outcome o;
  const AnalyticToeplitzMatrix t = build_T_r(3, 0.5);
  const double via_series = spectral_norm(AnalyticToeplitzMatrix(reciprocal_series(t.symbol())).to_matrix());
  const double via_solve = inverse_norm(t.to_matrix());
  const double rel = std::abs(via_series - via_solve) / via_series;
  if (via_series < 7.0 || via_series > 8.0) o.fail("series path " + fmt(via_series));
  if (via_solve < 7.0 || via_solve > 8.0) o.fail("solve path " + fmt(via_solve));
  if (rel > 1e-8) o.fail("paths differ by " + fmt(rel));
  report(2, "||T_r^-1|| at n=3, r=0.5", o,
         "series=" + fmt(via_series) + " solve=" + fmt(via_solve) + " rel.diff=" + fmt(rel));
}

void ac3() {
  Outcome o;
  double worst_norm_dev = 0.0;
  double worst_gap = 0.0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (double r : {0.3, 0.6, 0.9}) {
      const std::string at = "n=" + std::to_string(n) + " r=" + fmt(r);
      try {
        const ExtremalityReport rep = verify_extremality(r, scaled_roots_of_unity(n, r));
        worst_norm_dev = std::max(worst_norm_dev, std::abs(rep.norm - 1.0));
        worst_gap = std::max(worst_gap, rep.relative_gap);
        if (std::abs(rep.norm - 1.0) > 1e-6) o.fail(at + " ||M_B||=" + fmt(rep.norm));
        if (rep.relative_gap > 1e-6) o.fail(at + " inverse gap " + fmt(rep.relative_gap));
        if (rep.defect_rank != 1) o.fail(at + " defect_rank=" + std::to_string(rep.defect_rank));
      } catch (const std::exception& e) {
        o.fail(at + " error " + e.what());
      }
    }
  report(3, "model operators with zeros r*(roots of unity), n<=6", o,
         "max | ||M_B|| - 1 |=" + fmt(worst_norm_dev) + ", max relative inverse gap=" + fmt(worst_gap));
}

void ac4() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::size_t toeplitz = 0;
  std::size_t perturbed_count = 0;
  std::size_t dense = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<Complex> c(n);
    for (auto& v : c) v = oracle::random_complex(rng);
    const Matrix t = apply_calculus(AnalyticPolynomial(c), n).to_matrix();
    ++toeplitz;
    if (!commutes_with_shift(t)) o.fail("Toeplitz rejected at n=" + std::to_string(n));
    if (n == 1) continue;

    Matrix p = t;
    std::size_t i = rng() % n;
    const std::size_t j = rng() % n;
    if (i == n - 1 && j == 0) i = 0;  // that corner is its own diagonal
    std::uniform_real_distribution<double> mag(1e-3, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
    p(i, j) += std::polar(mag(rng), phase(rng));
    ++perturbed_count;
    if (commutes_with_shift(p)) o.fail("perturbation accepted at n=" + std::to_string(n));

    const Matrix g = oracle::random_matrix(rng, n, n);
    ++dense;
    if (commutes_with_shift(g)) o.fail("dense matrix accepted at n=" + std::to_string(n));
  }
  if (perturbed_count < 100) o.fail("only " + std::to_string(perturbed_count) + " perturbation trials");
  report(4, "commutant of M_n is lower-triangular Toeplitz", o,
         std::to_string(toeplitz) + " Toeplitz, " + std::to_string(perturbed_count) + " perturbed, " +
             std::to_string(dense) + " dense trials");
}

void ac5() {
  Outcome o;
  std::mt19937_64 rng(5);
  double worst_inverse = 0.0;
  double worst_bezout = 0.0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const AnalyticPolynomial f(oracle::random_symbol(rng, n, 1e-2));
    const AnalyticPolynomial g = reciprocal_series(f);
    const Matrix prod = apply_calculus(f, n).to_matrix() * apply_calculus(g, n).to_matrix();
    const double dev = (prod - Matrix::identity(n)).max_abs();
    worst_inverse = std::max(worst_inverse, dev);
    if (dev > 1e-10) o.fail("identity off by " + fmt(dev) + " at n=" + std::to_string(n));

    const std::vector<Complex> h = bezout_remainder(f, g);
    std::vector<Complex> total = convolve(f.coeffs(), g.coeffs());
    if (total.size() < n + h.size()) total.resize(n + h.size());
    for (std::size_t k = 0; k < h.size(); ++k) total[n + k] += h[k];
    double bez = 0.0;
    for (std::size_t k = 0; k < total.size(); ++k) bez = std::max(bez, std::abs(total[k] - (k == 0 ? 1.0 : 0.0)));
    worst_bezout = std::max(worst_bezout, bez);
    if (bez > 1e-10) o.fail("fg + z^n h off by " + fmt(bez) + " at n=" + std::to_string(n));
  }
  report(5, "f(M_n) (1/f)(M_n) = I and Bezout identity", o,
         std::to_string(trials) + " random f, |a0| >= 1e-2, n <= 12: max inverse dev=" + fmt(worst_inverse) +
             ", max Bezout dev=" + fmt(worst_bezout));
}

void ac6() {
  Outcome o;
  const double at_half = bracket_lower(12, 0.5);
  const double at_small = bracket_lower(4, 0.05);
  if (!(1.0 - std::pow(0.5, 12) > 0.999) || !(at_half > 0.999)) o.fail("n=12 r=0.5 lower=" + fmt(at_half));
  if (!(at_small > 1.0 - 1e-5)) o.fail("n=4 r=0.05 lower=" + fmt(at_small));
  for (auto [n, r] : {std::pair<std::size_t, double>{12, 0.5}, {4, 0.05}}) {
    const auto rec = theorem_check(n, r);
    if (!rec.pass) o.fail("bracket check failed at n=" + std::to_string(n));
    if (rec.scaled < bracket_lower(n, r) - 1e-8) o.fail("scaled below endpoint at n=" + std::to_string(n));
  }
  report(6, "bracket lower endpoint tends to 1", o,
         "1-0.5^12=" + fmt(at_half) + ", 1-0.05^4=" + fmt(at_small));
}

std::string run_search_report(std::size_t n, double r, const std::filesystem::path& path) {
  std::ostringstream out, err;
  const int code = cli::run({"tcn", "search", "--n", std::to_string(n), "--r", fmt(r), "--seed", "42", "--format",
                             "json", "-o", path.string()},
                            out, err);
  if (code != cli::kSuccess) return {};
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void ac7() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  double worst_scaled = 0.0;
  double min_excess = 1e300;
  for (std::size_t n : {1u, 2u, 3u})
    for (double r : {0.3, 0.5, 0.8}) {
      const std::string at = "n=" + std::to_string(n) + " r=" + fmt(r);
      const auto pa = dir / ("tcn_acceptance_search_a_" + std::to_string(n) + "_" + fmt(r) + ".json");
      const auto pb = dir / ("tcn_acceptance_search_b_" + std::to_string(n) + "_" + fmt(r) + ".json");
      const std::string a = run_search_report(n, r, pa);
      const std::string b = run_search_report(n, r, pb);
      std::filesystem::remove(pa);
      std::filesystem::remove(pb);
      if (a.empty()) {
        o.fail(at + " search failed");
        continue;
      }
      if (a != b) o.fail(at + " reports differ");
      const auto doc = nlohmann::json::parse(a);
      const double est = doc["best_value"].get<double>();
      const double ref = inverse_norm(build_T_r(n, r).to_matrix());
      const double scaled = std::pow(r, static_cast<double>(n)) * est;
      worst_scaled = std::max(worst_scaled, scaled);
      min_excess = std::min(min_excess, est - ref);
      if (est < ref - 1e-6) o.fail(at + " estimate " + fmt(est) + " below ||T_r^-1||=" + fmt(ref));
      if (scaled > 1.0 + 1e-8) o.fail(at + " r^n*estimate=" + fmt(scaled));
      if (n == 1 && std::abs(est - 1.0 / r) > 1e-6) o.fail(at + " estimate " + fmt(est) + " != 1/r");
    }
  report(7, "search soundness and determinism, seed 42", o,
         "max r^n*estimate=" + fmt(worst_scaled) + ", min(estimate - ||T_r^-1||)=" + fmt(min_excess) +
             ", repeated reports byte-identical");
}

void ac8() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst_modulus = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Complex lambda = oracle::random_in_disk(rng, 0.99);
    for (double v : eval_on_circle(BlaschkeFactor(lambda), 512)) worst_modulus = std::max(worst_modulus, std::abs(v - 1.0));
  }
  if (worst_modulus > 1e-10) o.fail("|b| deviates by " + fmt(worst_modulus));

  // Reciprocal coefficients grow like |λ|^-(k+1), so they are compared relative to max(1, |c_k|).
  std::vector<Complex> zeros{0.1, 0.5, 0.9, Complex{0.0, -0.7}};
  for (int k = 0; k < 16; ++k) zeros.push_back(oracle::random_in_disk(rng, 0.95));
  double worst_taylor = 0.0;
  double worst_recip = 0.0;
  for (const Complex lambda : zeros) {
    const BlaschkeFactor b(lambda);
    for (std::size_t n = 1; n <= 20; ++n) {
      const auto a = b.taylor(n);
      const auto div = oracle::series_divide({lambda, -1.0}, {1.0, -std::conj(lambda)}, n);
      const auto c = b.reciprocal_taylor(n);
      const auto rdiv = oracle::series_divide({1.0, -std::conj(lambda)}, {lambda, -1.0}, n);
      for (std::size_t k = 0; k < n; ++k) {
        worst_taylor = std::max(worst_taylor, std::abs(a[k] - div[k]));
        worst_recip = std::max(worst_recip, std::abs(c[k] - rdiv[k]) / std::max(1.0, std::abs(c[k])));
      }
    }
  }
  if (worst_taylor > 1e-12) o.fail("Taylor coefficients off by " + fmt(worst_taylor));
  if (worst_recip > 1e-12) o.fail("reciprocal coefficients off by " + fmt(worst_recip) + " relative");
  report(8, "Blaschke factor unimodularity and Taylor closed forms", o,
         "max ||b|-1|=" + fmt(worst_modulus) + ", max Taylor dev=" + fmt(worst_taylor) +
             ", max reciprocal rel.dev=" + fmt(worst_recip));
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
