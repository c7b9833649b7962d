#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include POLYFOCK_CLI11_HEADER
#include <nlohmann/json.hpp>

#include <polyfock/errors.hpp>
#include <polyfock/fock_spaces.hpp>
#include <polyfock/hermite_basis.hpp>
#include <polyfock/toeplitz.hpp>

#include "format.hpp"
#include "verify.hpp"

namespace polyfock::cli {

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

/// Thrown for argument problems found after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation, tolerance and output settings shared by the subcommands.
struct RunConfig {
  int n = 1;
  int truncation = 200;
  int d_max = 200;
  double rel_tol = 1e-8;
  std::string format = "json";
  std::string path;

  void validate() const {
    if (n < 1) throw UsageError("--n must be >= 1");
    if (truncation < 0 || d_max < 0) {
      throw UsageError("truncations must be non-negative");
    }
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw UsageError("--rel-tol must be in (0, 1e-2]");
  }
};

cd complex_arg(const std::string& text, const char* flag) {
  const auto z = parse_complex(text);
  if (!z) throw UsageError(std::string(flag) + ": cannot parse complex number '" + text + "'");
  return *z;
}

// Drops the sign of zero so output does not depend on how a zero was reached.
double unsigned_zero(double x) { return x == 0.0 ? 0.0 : x; }

json pair(cd z) { return json::array({unsigned_zero(z.real()), unsigned_zero(z.imag())}); }

std::string rational_text(const Rational& x) { return x.str(); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

// ---------------------------------------------------------------- basis

struct BasisArgs {
  int p = 0;
  int q = 0;
  std::string eval;
  bool coeffs = false;
  std::string form = "exact";
  int cap = kExactIndexCap;
};

std::string cmd_basis(const BasisArgs& a) {
  if (a.eval.empty() && !a.coeffs) throw UsageError("basis: give --eval and/or --coeffs");
  json doc;
  doc["p"] = a.p;
  doc["q"] = a.q;
  if (!a.eval.empty()) {
    const cd z = complex_arg(a.eval, "--eval");
    doc["z"] = pair(z);
    doc["value"] = pair(b_eval({a.p, a.q}, z));
  }
  if (a.coeffs) {
    if (a.p > a.cap || a.q > a.cap) throw UsageError("basis: index above --cap");
    const ScaledPolynomial f = a.form == "exact" ? b_exact({a.p, a.q}, a.cap) : b_coeffs({a.p, a.q}, a.cap);
    json terms = json::array();
    for (const auto& [e, c] : f.body.terms()) {
      terms.push_back(json::array({e[0], e[1], rational_text(c.re), rational_text(c.im)}));
    }
    doc["form"] = a.form;
    doc["coeffs"] = terms;
    doc["scale_sq"] = rational_text(f.scale_sq);
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- kernel

struct KernelArgs {
  std::string kind = "poly";
  std::string z;
  std::string w;
  int series = 0;
  bool log = false;
};

std::string cmd_kernel(const KernelArgs& a, const RunConfig& config) {
  const auto kind = parse_space_kind(a.kind);
  if (!kind) throw UsageError("--kind must be poly or true");
  const SpaceId space{*kind, config.n};
  const cd z = complex_arg(a.z, "--z");
  const cd w = complex_arg(a.w, "--w");

  json doc;
  doc["n"] = space.n;
  doc["kind"] = to_string(space.kind);
  doc["z"] = pair(z);
  doc["w"] = pair(w);
  cd value{0.0, 0.0};
  if (a.log) {
    const LogComplex v = space.kind == SpaceKind::poly ? kernel_poly_log(space.n, z, w)
                                                       : kernel_true_log(space.n, z, w);
    doc["log_abs"] = v.log_abs;
    doc["arg"] = v.arg;
  } else {
    value = kernel(space, z, w);
    doc["value_re"] = unsigned_zero(value.real());
    doc["value_im"] = unsigned_zero(value.imag());
  }
  if (a.series > 0) {
    if (a.log) throw UsageError("--series cannot be combined with --log");
    const cd series = kernel_partial_sum(space, z, w, a.series);
    const double residual = std::abs(series - value) / std::max(1.0, std::abs(value));
    doc["series_truncation"] = a.series;
    doc["series_re"] = unsigned_zero(series.real());
    doc["series_im"] = unsigned_zero(series.imag());
    doc["series_residual"] = residual;
    doc["series_converged"] = residual <= config.rel_tol;
  }

  if (config.format == "csv") {
    if (a.log) throw UsageError("--log output is JSON only");
    std::ostringstream csv;
    csv << "n,kind,z_re,z_im,w_re,w_im,value_re,value_im\n";
    csv << space.n << ',' << to_string(space.kind) << ',' << format_double(z.real()) << ','
        << format_double(z.imag()) << ',' << format_double(w.real()) << ','
        << format_double(w.imag()) << ',' << format_double(value.real()) << ','
        << format_double(value.imag()) << '\n';
    return csv.str();
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- toeplitz

struct ToeplitzArgs {
  std::string symbol;
  bool blocks = false;
};

std::string cmd_toeplitz(const ToeplitzArgs& a, const RunConfig& config) {
  RadialSymbol symbol;
  try {
    symbol = parse_symbol(a.symbol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (a.blocks) {
    const RadialOperatorRep rep = toeplitz_rep(symbol, config.n, config.d_max);
    json doc;
    doc["n"] = rep.n;
    doc["symbol"] = symbol.name;
    doc["d_min"] = rep.d_min;
    doc["d_max"] = rep.d_max();
    doc["truncation"] = rep.truncation;
    json blocks = json::array();
    json norms = json::array();
    json limit_gaps = json::array();
    for (int d = rep.d_min; d <= rep.d_max(); ++d) {
      const Eigen::MatrixXcd& block = rep.block(d);
      json rows = json::array();
      for (Eigen::Index i = 0; i < block.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < block.cols(); ++j) row.push_back(pair(block(i, j)));
        rows.push_back(row);
      }
      blocks.push_back(rows);
      norms.push_back(spectral_norm(block));
      if (symbol.limit_at_infinity) {
        const auto identity = Eigen::MatrixXcd::Identity(block.rows(), block.cols());
        limit_gaps.push_back(spectral_norm(block - *symbol.limit_at_infinity * identity));
      }
    }
    doc["blocks"] = blocks;
    doc["norms"] = norms;
    if (symbol.limit_at_infinity) {
      doc["limit"] = pair(*symbol.limit_at_infinity);
      doc["limit_gaps"] = limit_gaps;
    }
    return doc.dump(2) + "\n";
  }

  const EigenvalueSequence lambda = lambda_seq(symbol, config.n, config.truncation);
  if (config.format == "json") {
    json doc;
    doc["n"] = lambda.n;
    doc["symbol"] = symbol.name;
    doc["pmax"] = config.truncation;
    doc["unbounded_symbol"] = lambda.unbounded_symbol;
    json values = json::array();
    for (const auto& v : lambda.values) values.push_back(pair(v));
    doc["values"] = values;
    return doc.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << "p,re,im\n";
  for (std::size_t p = 0; p < lambda.values.size(); ++p) {
    csv << p << ',' << format_double(lambda.values[p].real()) << ','
        << format_double(lambda.values[p].imag()) << '\n';
  }
  return csv.str();
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  bool quick = false;
  bool inject_corruption = false;
};

std::string cmd_verify(const VerifyArgs& a, bool* all_passed) {
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = suite_names();
  } else {
    suites = {a.suite};
  }
  VerifyOptions options{a.quick, a.inject_corruption};
  std::vector<CheckResult> results;
  for (const auto& s : suites) {
    auto part = run_suite(s, options);
    results.insert(results.end(), part.begin(), part.end());
  }
  *all_passed = std::all_of(results.begin(), results.end(), [](const auto& c) { return c.pass; });
  std::ostringstream table;
  print_table(table, results);
  return table.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"polyfock: polyanalytic Fock space toolkit", "polyfock"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  RunConfig config;

  BasisArgs basis_args;
  auto* basis = app.add_subcommand("basis", "Evaluate b_{p,q} or print its exact coefficients");
  basis->add_option("--p", basis_args.p, "z-degree index p")->required()->check(CLI::Range(0, 1 << 30));
  basis->add_option("--q", basis_args.q, "zbar-degree index q")->required()->check(CLI::Range(0, 1 << 30));
  basis->add_option("--eval", basis_args.eval, "Evaluation point a+bi");
  basis->add_flag("--coeffs", basis_args.coeffs, "Print exact coefficients");
  basis->add_option("--form", basis_args.form, "Coefficient construction")
      ->check(CLI::IsMember({"exact", "closed"}));
  basis->add_option("--cap", basis_args.cap, "Largest index for exact coefficients")
      ->check(CLI::Range(0, 256));

  KernelArgs kernel_args;
  auto* kernel_cmd = app.add_subcommand("kernel", "Reproducing kernel of F_n or F_(n)");
  kernel_cmd->add_option("--n", config.n, "Order n")->required()->check(CLI::Range(1, 1 << 30));
  kernel_cmd->add_option("--kind", kernel_args.kind, "poly or true")
      ->check(CLI::IsMember({"poly", "true", "true_poly"}));
  kernel_cmd->add_option("--z", kernel_args.z, "First point a+bi")->required();
  kernel_cmd->add_option("--w", kernel_args.w, "Second point a+bi")->required();
  kernel_cmd->add_option("--series", kernel_args.series, "Also sum the basis series up to p <= P")
      ->check(CLI::Range(1, 1 << 30));
  kernel_cmd->add_flag("--log", kernel_args.log, "Print log|K| and arg K instead of K");
  kernel_cmd->add_option("--rel-tol", config.rel_tol, "Series convergence tolerance");
  kernel_cmd->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  ToeplitzArgs toeplitz_args;
  auto* toeplitz_cmd = app.add_subcommand("toeplitz", "Eigenvalues or blocks of a radial Toeplitz operator");
  toeplitz_cmd->add_option("--n", config.n, "Order n")->required()->check(CLI::Range(1, 1 << 30));
  toeplitz_cmd
      ->add_option("--symbol", toeplitz_args.symbol,
                   "const:c, indicator:u, gauss:s, rational, exp, inverse or r2")
      ->required();
  toeplitz_cmd->add_option("--pmax", config.truncation, "Largest p of the eigenvalue sequence")
      ->check(CLI::Range(0, 1 << 30));
  toeplitz_cmd->add_flag("--blocks", toeplitz_args.blocks, "Write the block sequence of T_{n,a} as JSON");
  toeplitz_cmd->add_option("--dmax", config.d_max, "Largest diagonal for --blocks")
      ->check(CLI::Range(0, 1 << 30));
  toeplitz_cmd->add_option("--format", config.format, "csv or json (eigenvalues)")
      ->check(CLI::IsMember({"json", "csv"}));
  toeplitz_cmd->add_option("--output", config.path, "Write to this file instead of stdout");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run invariant suites; exit 0 iff all pass");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.insert(suite_choices.begin(), "all");
  verify->add_option("--suite", verify_args.suite, "Suite to run")->check(CLI::IsMember(suite_choices));
  verify->add_flag("--quick", verify_args.quick, "Smaller index ranges and truncations");
  verify->add_flag("--inject-corruption", verify_args.inject_corruption,
                   "Test mode: corrupt one basis coefficient")
      ->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n"
        << "run 'polyfock --help' for usage\n";
    return kExitUsage;
  }

  try {
    std::string text;
    int code = kExitOk;
    if (basis->parsed()) {
      text = cmd_basis(basis_args);
    } else if (kernel_cmd->parsed()) {
      config.validate();
      text = cmd_kernel(kernel_args, config);
    } else if (toeplitz_cmd->parsed()) {
      if (toeplitz_cmd->count("--format") == 0) config.format = "csv";
      config.validate();
      text = cmd_toeplitz(toeplitz_args, config);
      emit(text, config.path, out);
      return kExitOk;
    } else if (verify->parsed()) {
      bool passed = false;
      text = cmd_verify(verify_args, &passed);
      code = passed ? kExitOk : kExitFailure;
    }
    out << text;
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace polyfock::cli
