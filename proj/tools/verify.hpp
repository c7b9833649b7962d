#ifndef POLYFOCK_TOOLS_VERIFY_HPP
#define POLYFOCK_TOOLS_VERIFY_HPP

#include <ostream>
#include <string>
#include <vector>

namespace polyfock::cli {

struct VerifyOptions {
  bool quick = false;
  /// Test mode: perturb one closed-form basis coefficient before the basis
  /// checks run, so the suite must fail.
  bool corrupt_basis = false;
};

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// laguerre, basis, kernels, radial, toeplitz.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options);

/// Fixed-width table, one row per check, plus a summary line.
void print_table(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace polyfock::cli

#endif  // POLYFOCK_TOOLS_VERIFY_HPP
