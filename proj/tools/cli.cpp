#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tcn/bounds.hpp"
#include "tcn/errors.hpp"
#include "tcn/model.hpp"

namespace tcn::cli {

using json = nlohmann::ordered_json;

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
    throw std::invalid_argument("grid spec must be start:stop:step, got '" + spec + "'");
  }
  double start = 0.0, stop = 0.0, step = 0.0;
  try {
    std::size_t used = 0;
    const std::string a = spec.substr(0, first);
    const std::string b = spec.substr(first + 1, second - first - 1);
    const std::string c = spec.substr(second + 1);
    start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument("");
    stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument("");
    step = std::stod(c, &used);
    if (used != c.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid spec '" + spec + "' has a non-numeric field");
  }
  if (!(start > 0.0 && start < 1.0 && stop > 0.0 && stop < 1.0)) {
    throw std::invalid_argument("grid endpoints must lie strictly inside (0, 1): '" + spec + "'");
  }
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive: '" + spec + "'");
  if (stop < start) throw std::invalid_argument("grid stop precedes start: '" + spec + "'");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
  return grid;
}

std::vector<std::size_t> parse_size_list(const std::string& spec) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad list entry '" + item + "'");
    }
    if (used != item.size() || v < 1) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TCN_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

namespace {

struct Sink {
  std::string path;  // empty: write to `out`
};

// Writes the whole report at once; a file is replaced by rename so readers
// never see a partial report.
void emit(const Sink& sink, const std::string& content, std::ostream& out) {
  if (sink.path.empty()) {
    out << content;
    return;
  }
  const std::filesystem::path target(sink.path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  std::string s = format_real(c.real());
  s += c.imag() < 0.0 ? "-" : "+";
  s += format_real(std::abs(c.imag()));
  s += "i";
  return s;
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << " ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << " " << format_complex(m(i, j));
    os << "\n";
  }
  return os.str();
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

json record_json(const BoundsRecord& r) {
  json j{{"n", r.n},           {"r", r.r},         {"norm_T", r.norm_T}, {"inv_norm", r.inv_norm},
         {"scaled", r.scaled}, {"lower", r.lower}, {"upper", r.upper},   {"pass", r.pass}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

struct VerifyOptions {
  std::size_t n_max = 12;
  std::string r_grid = "0.05:0.95:0.05";
  std::string output;
  std::string format = "csv";
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  const std::vector<double> grid = parse_grid(opt.r_grid);
  const std::size_t threads = worker_count();
  const SweepResult sweep = grid_sweep(opt.n_max, grid, threads);

  std::string content;
  if (opt.format == "json") {
    json records = json::array();
    for (const auto& r : sweep.records) records.push_back(record_json(r));
    json trends = json::object();
    json per_r = json::array();
    for (std::size_t j = 0; j < sweep.trends.r_values.size(); ++j)
      per_r.push_back({{"r", sweep.trends.r_values[j]},
                       {"nondecreasing_in_n", static_cast<bool>(sweep.trends.nondecreasing_in_n[j])}});
    json per_n = json::array();
    for (std::size_t i = 0; i < sweep.trends.n_values.size(); ++i)
      per_n.push_back({{"n", sweep.trends.n_values[i]},
                       {"min_scaled_over_r", sweep.trends.min_scaled_over_r[i]},
                       {"argmin_r", sweep.trends.argmin_r[i]}});
    trends["per_r"] = std::move(per_r);
    trends["per_n"] = std::move(per_n);
    json doc{{"command", "verify"},
             {"config", {{"n_max", opt.n_max}, {"r_grid", opt.r_grid}, {"tolerance", kBracketTolerance}}},
             {"all_pass", sweep.all_pass()},
             {"records", std::move(records)},
             {"trends", std::move(trends)}};
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "n,r,norm_T,inv_norm,scaled,lower,upper,pass\n";
    for (const auto& r : sweep.records) {
      os << r.n << "," << format_real(r.r) << "," << format_real(r.norm_T) << ","
         << format_real(r.inv_norm) << "," << format_real(r.scaled) << "," << format_real(r.lower)
         << "," << format_real(r.upper) << "," << bool_text(r.pass) << "\n";
    }
    content = os.str();
  }
  emit({opt.output}, content, out);

  std::size_t failures = 0;
  for (const auto& r : sweep.records) {
    if (r.pass) continue;
    ++failures;
    err << "FAIL n=" << r.n << " r=" << format_real(r.r);
    if (!r.error.empty())
      err << " error: " << r.error;
    else
      err << " scaled=" << format_real(r.scaled) << " not in [" << format_real(r.lower) << ", "
          << format_real(r.upper) << "]";
    err << "\n";
  }
  if (failures > 0) {
    err << failures << " of " << sweep.records.size() << " grid points failed\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

struct ExtremalOptions {
  std::size_t n = 3;
  double r = 0.5;
  bool model = false;
  std::size_t samples = kDefaultSamples;
  std::string output;
  std::string format = "text";
};

int cmd_extremal(const ExtremalOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.n == 0) throw DomainError("n must be >= 1");
  if (!(opt.r > 0.0 && opt.r < 1.0)) throw DomainError("r must lie in (0, 1)");
  const double kron = kronecker_bound(opt.n, opt.r);
  const double lower = bracket_lower(opt.n, opt.r);

  json doc;
  std::ostringstream text;
  std::ostringstream csv;
  bool ok = true;
  if (opt.model) {
    const ExtremalityReport rep = verify_extremality(opt.r, scaled_roots_of_unity(opt.n, opt.r), opt.samples);
    const double scaled = std::pow(opt.r, static_cast<double>(opt.n)) * rep.inverse_norm;
    ok = rep.holds();
    json zeros = json::array();
    for (const auto& z : rep.zeros) zeros.push_back(complex_json(z));
    doc = {{"command", "extremal"},
           {"kind", "model"},
           {"config", {{"n", opt.n}, {"r", opt.r}, {"samples", opt.samples}}},
           {"zeros", std::move(zeros)},
           {"samples_used", rep.samples},
           {"matrix", matrix_json(rep.matrix)},
           {"norm_T", rep.norm},
           {"inv_norm", rep.inverse_norm},
           {"scaled", scaled},
           {"kronecker", kron},
           {"relative_gap", rep.relative_gap},
           {"defect_rank", rep.defect_rank},
           {"norm_is_one", rep.norm_is_one},
           {"inverse_matches_kronecker", rep.inverse_matches_kronecker},
           {"extremal", ok}};
    text << "model operator M_B, zeros r * (n-th roots of unity), n=" << opt.n
         << " r=" << format_real(opt.r) << " samples=" << rep.samples << "\n"
         << "matrix:\n"
         << matrix_text(rep.matrix) << "norm_T=" << format_real(rep.norm) << "\n"
         << "inv_norm=" << format_real(rep.inverse_norm) << "\n"
         << "scaled=" << format_real(scaled) << "\n"
         << "kronecker=" << format_real(kron) << "\n"
         << "relative_gap=" << format_real(rep.relative_gap) << "\n"
         << "defect_rank=" << rep.defect_rank << "\n"
         << "extremal=" << bool_text(ok) << "\n";
    csv << "kind,n,r,samples,norm_T,inv_norm,scaled,kronecker,relative_gap,defect_rank,extremal\n"
        << "model," << opt.n << "," << format_real(opt.r) << "," << rep.samples << ","
        << format_real(rep.norm) << "," << format_real(rep.inverse_norm) << "," << format_real(scaled)
        << "," << format_real(kron) << "," << format_real(rep.relative_gap) << "," << rep.defect_rank
        << "," << bool_text(ok) << "\n";
    if (!ok) {
      err << "extremality check failed: norm_T=" << format_real(rep.norm)
          << " inv_norm=" << format_real(rep.inverse_norm) << " kronecker=" << format_real(kron) << "\n";
    }
  } else {
    const AnalyticToeplitzMatrix t = build_T_r(opt.n, opt.r);
    const BoundsRecord rec = theorem_check(opt.n, opt.r);
    ok = rec.pass;
    json column = json::array();
    for (const auto& c : t.symbol().coeffs()) column.push_back(complex_json(c));
    doc = {{"command", "extremal"},
           {"kind", "blaschke"},
           {"config", {{"n", opt.n}, {"r", opt.r}}},
           {"first_column", std::move(column)},
           {"matrix", matrix_json(t.to_matrix())},
           {"norm_T", rec.norm_T},
           {"inv_norm", rec.inv_norm},
           {"scaled", rec.scaled},
           {"kronecker", kron},
           {"lower", lower},
           {"upper", 1.0},
           {"pass", rec.pass}};
    text << "T_r = b_r(M_n), n=" << opt.n << " r=" << format_real(opt.r) << "\n"
         << "matrix:\n"
         << matrix_text(t.to_matrix()) << "norm_T=" << format_real(rec.norm_T) << "\n"
         << "inv_norm=" << format_real(rec.inv_norm) << "\n"
         << "scaled=" << format_real(rec.scaled) << "\n"
         << "kronecker=" << format_real(kron) << "\n"
         << "lower=" << format_real(lower) << " upper=1\n"
         << "pass=" << bool_text(rec.pass) << "\n";
    csv << "kind,n,r,norm_T,inv_norm,scaled,kronecker,lower,upper,pass\n"
        << "blaschke," << opt.n << "," << format_real(opt.r) << "," << format_real(rec.norm_T) << ","
        << format_real(rec.inv_norm) << "," << format_real(rec.scaled) << "," << format_real(kron)
        << "," << format_real(lower) << ",1," << bool_text(rec.pass) << "\n";
  }

  if (opt.format == "json")
    emit({opt.output}, doc.dump(2) + "\n", out);
  else if (opt.format == "csv")
    emit({opt.output}, csv.str(), out);
  else
    emit({opt.output}, text.str(), out);
  return ok ? kSuccess : kVerificationFailure;
}

struct SearchOptions {
  std::size_t n = 3;
  double r = 0.5;
  std::uint64_t seed = 42;
  std::size_t restarts = 32;
  std::size_t iters = 2000;
  std::string output;
  std::string format = "text";
};

SearchConfig search_config(std::uint64_t seed, std::size_t restarts, std::size_t iters) {
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  cfg.iterations = iters;
  cfg.threads = worker_count();
  return cfg;
}

int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
  const SearchResult res = estimate_t_a(opt.n, opt.r, search_config(opt.seed, opt.restarts, opt.iters));
  const double kron = kronecker_bound(opt.n, opt.r);

  std::string content;
  if (opt.format == "json") {
    json coeffs = json::array();
    for (const auto& c : res.best_coeffs.coeffs()) coeffs.push_back(complex_json(c));
    json doc{{"command", "search"},
             {"config", {{"n", opt.n}, {"r", opt.r}, {"seed", opt.seed}, {"restarts", opt.restarts}, {"iters", opt.iters}}},
             {"best_value", res.best_value},
             {"scaled_value", res.scaled_value},
             {"kronecker_gap", res.kronecker_gap},
             {"kronecker", kron},
             {"seed_value", res.seed_value},
             {"best_restart", res.best_restart},
             {"restarts_used", res.restarts_used},
             {"evaluations", res.evaluations},
             {"budget_exhausted", res.budget_exhausted},
             {"best_coeffs", std::move(coeffs)}};
    content = doc.dump(2) + "\n";
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "n,r,seed,restarts,iters,best_value,scaled_value,kronecker_gap,seed_value,best_restart,"
          "evaluations,budget_exhausted,best_coeffs\n"
       << opt.n << "," << format_real(opt.r) << "," << opt.seed << "," << opt.restarts << "," << opt.iters
       << "," << format_real(res.best_value) << "," << format_real(res.scaled_value) << ","
       << format_real(res.kronecker_gap) << "," << format_real(res.seed_value) << "," << res.best_restart
       << "," << res.evaluations << "," << bool_text(res.budget_exhausted) << ",";
    const auto c = res.best_coeffs.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
      os << (k ? ";" : "") << format_real(c[k].real()) << ":" << format_real(c[k].imag());
    os << "\n";
    content = os.str();
  } else {
    std::ostringstream os;
    os << "n=" << opt.n << " r=" << format_real(opt.r) << " seed=" << opt.seed
       << " restarts=" << opt.restarts << " iters=" << opt.iters << "\n"
       << "best_value=" << format_real(res.best_value) << "\n"
       << "scaled_value=" << format_real(res.scaled_value) << "\n"
       << "kronecker_gap=" << format_real(res.kronecker_gap) << "\n"
       << "kronecker=" << format_real(kron) << "\n"
       << "seed_value=" << format_real(res.seed_value) << "\n"
       << "best_restart=" << res.best_restart << "\n"
       << "evaluations=" << res.evaluations << "\n"
       << "budget_exhausted=" << bool_text(res.budget_exhausted) << "\n"
       << "best_coeffs:\n";
    for (const auto& c : res.best_coeffs.coeffs()) os << "  " << format_complex(c) << "\n";
    content = os.str();
  }
  emit({opt.output}, content, out);
  if (res.budget_exhausted) err << "note: iteration budget exhausted before the step size collapsed\n";
  if (res.scaled_value > 1.0 + kBracketTolerance) {
    err << "upper bound violated: r^n * estimate = " << format_real(res.scaled_value) << " > 1\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

struct RemarkOptions {
  std::string n_list = "1,2,3,4";
  std::string r_grid = "0.1:0.9:0.2";
  std::uint64_t seed = 42;
  std::size_t restarts = 8;
  std::size_t iters = 400;
  std::string output;
  std::string format = "csv";
};

int cmd_remark(const RemarkOptions& opt, std::ostream& out, std::ostream& err) {
  const auto ns = parse_size_list(opt.n_list);
  for (auto n : ns)
    if (n > 16) throw DomainError("remark: n must lie in 1..16");
  const auto rs = parse_grid(opt.r_grid);
  const RemarkReport rep = remark_scan(ns, rs, search_config(opt.seed, opt.restarts, opt.iters));

  bool ok = true;
  std::string content;
  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& r : rep.rows) {
      ok = ok && r.within_bracket;
      rows.push_back({{"n", r.n}, {"r", r.r}, {"estimate", r.estimate}, {"scaled", r.scaled},
                      {"gap", r.gap}, {"within_bracket", r.within_bracket}});
    }
    json inf_n = json::array();
    for (std::size_t j = 0; j < rep.r_values.size(); ++j)
      inf_n.push_back({{"r", rep.r_values[j]}, {"inf_over_n", rep.inf_over_n[j]}});
    json inf_r = json::array();
    for (std::size_t i = 0; i < rep.n_values.size(); ++i)
      inf_r.push_back({{"n", rep.n_values[i]}, {"inf_over_r", rep.inf_over_r[i]}});
    json doc{{"command", "remark"},
             {"config", {{"n_list", opt.n_list}, {"r_grid", opt.r_grid}, {"seed", opt.seed},
                         {"restarts", opt.restarts}, {"iters", opt.iters}}},
             {"rows", std::move(rows)},
             {"inf_over_n", std::move(inf_n)},
             {"inf_over_r", std::move(inf_r)}};
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "n,r,estimate,scaled,gap,within_bracket\n";
    for (const auto& r : rep.rows) {
      ok = ok && r.within_bracket;
      os << r.n << "," << format_real(r.r) << "," << format_real(r.estimate) << ","
         << format_real(r.scaled) << "," << format_real(r.gap) << "," << bool_text(r.within_bracket) << "\n";
    }
    content = os.str();
    for (std::size_t j = 0; j < rep.r_values.size(); ++j)
      err << "inf over n at r=" << format_real(rep.r_values[j]) << ": " << format_real(rep.inf_over_n[j]) << "\n";
    for (std::size_t i = 0; i < rep.n_values.size(); ++i)
      err << "inf over r at n=" << rep.n_values[i] << ": " << format_real(rep.inf_over_r[i]) << "\n";
  }
  emit({opt.output}, content, out);
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Condition numbers of analytic Toeplitz matrices: bracket checks, extremal matrices, search"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check the bracket max(r^n, 1-r^n) <= r^n ||T_r^-1|| <= 1 on a grid");
  verify_cmd->add_option("--n-max", verify.n_max, "Largest matrix size")->check(CLI::Range(1, 64));
  verify_cmd->add_option("--r-grid", verify.r_grid, "r grid as start:stop:step");
  verify_cmd->add_option("-o,--output", verify.output, "Report file (default: stdout)");
  verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember({"csv", "json"}));

  ExtremalOptions extremal;
  auto* extremal_cmd = app.add_subcommand("extremal", "Build b_r(M_n) or the model operator and report norms");
  extremal_cmd->add_option("--n", extremal.n, "Matrix size")->check(CLI::Range(1, 64));
  extremal_cmd->add_option("--r", extremal.r, "Eigenvalue modulus");
  extremal_cmd->add_flag("--model", extremal.model, "Model operator with zeros r * (n-th roots of unity)");
  extremal_cmd->add_option("--samples", extremal.samples, "Quadrature points (power of two)");
  extremal_cmd->add_option("-o,--output", extremal.output, "Report file (default: stdout)");
  extremal_cmd->add_option("--format", extremal.format)->check(CLI::IsMember({"text", "csv", "json"}));

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Estimate sup ||T^-1|| over analytic Toeplitz contractions");
  search_cmd->add_option("--n", search.n, "Matrix size")->check(CLI::Range(1, 16));
  search_cmd->add_option("--r", search.r, "Eigenvalue modulus");
  search_cmd->add_option("--seed", search.seed);
  search_cmd->add_option("--restarts", search.restarts)->check(CLI::PositiveNumber);
  search_cmd->add_option("--iters", search.iters);
  search_cmd->add_option("-o,--output", search.output, "Report file (default: stdout)");
  search_cmd->add_option("--format", search.format)->check(CLI::IsMember({"text", "csv", "json"}));

  std::size_t bound_n = 1;
  double bound_r = 0.0;
  auto* bound_cmd = app.add_subcommand("bound", "Print 1/r^n and the bracket endpoints");
  bound_cmd->add_option("--n", bound_n)->required();
  bound_cmd->add_option("--r", bound_r)->required();

  RemarkOptions remark;
  auto* remark_cmd = app.add_subcommand("remark", "Tabulate r^n * estimate and its infima over n and r");
  remark_cmd->add_option("--n-list", remark.n_list, "Comma-separated sizes");
  remark_cmd->add_option("--r-grid", remark.r_grid, "r grid as start:stop:step");
  remark_cmd->add_option("--seed", remark.seed);
  remark_cmd->add_option("--restarts", remark.restarts)->check(CLI::PositiveNumber);
  remark_cmd->add_option("--iters", remark.iters);
  remark_cmd->add_option("-o,--output", remark.output, "Report file (default: stdout)");
  remark_cmd->add_option("--format", remark.format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*extremal_cmd) return cmd_extremal(extremal, out, err);
    if (*search_cmd) return cmd_search(search, out, err);
    if (*remark_cmd) return cmd_remark(remark, out, err);
    if (*bound_cmd) {
      const double kron = kronecker_bound(bound_n, bound_r);
      out << "kronecker=" << format_real(kron) << " lower=" << format_real(bracket_lower(bound_n, bound_r))
          << " upper=1\n";
      return kSuccess;
    }
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << " (try --samples " << extremal.samples * 2 << " or more)\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace tcn::cli
