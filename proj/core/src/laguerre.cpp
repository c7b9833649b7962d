#include "polyfock/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polyfock {

namespace {

constexpr int kLogFactorialTable = 8192;

std::vector<double> build_log_factorials() {
  std::vector<double> table(kLogFactorialTable + 1);
  table[0] = 0.0;
  // Summing logs keeps the table free of lgamma's global sign state.
  long double acc = 0.0L;
  for (int i = 1; i <= kLogFactorialTable; ++i) {
    acc += std::log(static_cast<long double>(i));
    table[i] = static_cast<double>(acc);
  }
  return table;
}

void check_params(LaguerreParams params, const char* where) {
  if (params.n < 0 || params.alpha < 0) {
    throw std::domain_error(std::string(where) + ": negative degree or order");
  }
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  static const std::vector<double> table = build_log_factorials();
  if (n <= kLogFactorialTable) return table[n];
  const double x = n + 1.0;
  // Stirling series; error below 1e-16 relative at this size.
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI) + 1.0 / (12.0 * x) -
         1.0 / (360.0 * x * x * x);
}

std::vector<double> laguerre_eval_all(LaguerreParams params, double x) {
  check_params(params, "laguerre_eval");
  if (!(x >= 0.0)) throw std::domain_error("laguerre_eval: x must be non-negative");
  const double a = params.alpha;
  std::vector<double> values(params.n + 1);
  values[0] = 1.0;
  if (params.n >= 1) values[1] = 1.0 + a - x;
  for (int k = 2; k <= params.n; ++k) {
    values[k] = ((2.0 * k - 1.0 + a - x) * values[k - 1] - (k - 1.0 + a) * values[k - 2]) / k;
  }
  return values;
}

double laguerre_eval(LaguerreParams params, double x) {
  check_params(params, "laguerre_eval");
  if (!(x >= 0.0)) throw std::domain_error("laguerre_eval: x must be non-negative");
  const double a = params.alpha;
  double prev = 1.0;
  if (params.n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 2; k <= params.n; ++k) {
    const double next = ((2.0 * k - 1.0 + a - x) * cur - (k - 1.0 + a) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<Rational> laguerre_exact(LaguerreParams params) {
  check_params(params, "laguerre_exact");
  const int n = params.n;
  std::vector<Rational> coeffs(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rational c(binomial(n + params.alpha, n - k), factorial(k));
    coeffs[k] = (k % 2 == 0) ? c : Rational(-c);
  }
  return coeffs;
}

double laguerre_function_unweighted(int m, int alpha, double t) {
  if (!(t >= 0.0)) throw std::domain_error("laguerre_function: t must be non-negative");
  if (m < 0 || alpha < 0) throw std::domain_error("laguerre_function: negative index");
  const double lag = laguerre_eval({m, alpha}, t);
  if (alpha == 0) return lag;
  if (t == 0.0) return 0.0;
  const double log_pref =
      0.5 * (log_factorial(m) - log_factorial(m + alpha)) + 0.5 * alpha * std::log(t);
  return std::exp(log_pref) * lag;
}

double laguerre_function(int m, int alpha, double t) {
  if (!(t >= 0.0)) throw std::domain_error("laguerre_function: t must be non-negative");
  if (m < 0 || alpha < 0) throw std::domain_error("laguerre_function: negative index");
  const double lag = laguerre_eval({m, alpha}, t);
  if (alpha > 0 && t == 0.0) return 0.0;
  double log_pref = 0.5 * (log_factorial(m) - log_factorial(m + alpha)) - 0.5 * t;
  if (alpha > 0) log_pref += 0.5 * alpha * std::log(t);
  return std::exp(log_pref) * lag;
}

bool rodrigues_identity_holds(int n, int alpha) {
  if (n < 0 || alpha < 0) throw std::domain_error("rodrigues_identity_holds: negative index");
  using P2 = Polynomial<2>;  // variables x, y
  constexpr std::size_t kX = 0;
  constexpr std::size_t kY = 1;

  // e^{-xy} P  ->  d/dx  ->  e^{-xy} (P_x - y P)
  P2 lhs = P2::monomial({n + alpha, 0});
  for (int i = 0; i < n; ++i) lhs = lhs.derivative(kX) - lhs.times_variable(kY);

  const auto coeffs = laguerre_exact({n, alpha});
  P2 rhs;
  const Rational nfact(factorial(n));
  for (int k = 0; k <= n; ++k) rhs.add_term({alpha + k, k}, ComplexRational(nfact * coeffs[k]));
  return lhs == rhs;
}

double laguerre_function_sup(int m, int alpha, double x, int grid) {
  if (grid < 2) throw std::invalid_argument("laguerre_function_sup: grid must be >= 2");
  if (!(x >= 0.0)) throw std::domain_error("laguerre_function_sup: x must be non-negative");
  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = x * static_cast<double>(i) / static_cast<double>(grid - 1);
    best = std::max(best, std::abs(laguerre_function(m, alpha, t)));
  }
  return best;
}

double log_laguerre_function_sup_bound(int m, int d, double x) {
  double out = 0.5 * log_factorial(m) + std::log(m + 1.0) + (m + 0.5 * d) * std::log1p(x) -
               0.5 * log_factorial(m + d);
  if (m > 0) out += m * std::log(static_cast<double>(m + d));
  return out;
}

}  // namespace polyfock
