#include "polyfock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "polyfock/errors.hpp"
#include "polyfock/laguerre.hpp"

namespace polyfock {

namespace {

// L_n^(alpha)(x) and L_{n-1}^(alpha)(x), rescaled on the fly; the true
// values are (ln, lnm1) * exp(log_scale). Extended precision keeps the
// rounding of the weight formula below 1e-15 up to a few hundred nodes.
struct ScaledLaguerrePair {
  long double ln = 1.0L;
  long double lnm1 = 0.0L;
  long double log_scale = 0.0L;
};

ScaledLaguerrePair laguerre_pair(int n, int alpha, long double x) {
  ScaledLaguerrePair out;
  long double prev = 1.0L;
  if (n == 0) return out;
  long double cur = 1.0L + alpha - x;
  for (int k = 2; k <= n; ++k) {
    const long double next = ((2.0L * k - 1.0L + alpha - x) * cur - (k - 1.0L + alpha) * prev) / k;
    prev = cur;
    cur = next;
    const long double mag = std::fabs(cur);
    if (mag > 1e150L) {
      out.log_scale += std::log(mag);
      prev /= mag;
      cur /= mag;
    }
  }
  out.ln = cur;
  out.lnm1 = prev;
  return out;
}

QuadratureRule build_gauss_laguerre(int alpha, int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(static_cast<double>(k) * (k + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw QuadratureError("gauss_laguerre: Jacobi eigen-solver did not converge (alpha=" +
                          std::to_string(alpha) + ", N=" + std::to_string(n) + ")");
  }

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.log_scale = log_factorial(alpha);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // log((n+alpha)! / (n! alpha! (n+alpha)^2)); weights are stored divided by alpha!.
  long double log_const = -2.0L * std::log(static_cast<long double>(n + alpha));
  for (int k = 1; k <= alpha; ++k) log_const += std::log(static_cast<long double>(n + k) / k);
  for (int i = 0; i < n; ++i) {
    long double x = solver.eigenvalues()(i);
    for (int iter = 0; iter < 4; ++iter) {
      const auto p = laguerre_pair(n, alpha, x);
      const long double denom = n * p.ln - (n + alpha) * p.lnm1;
      if (denom == 0.0L) break;
      const long double step = x * p.ln / denom;
      x -= step;
      if (std::fabs(step) <= 1e-19L * x) break;
    }
    const auto p = laguerre_pair(n, alpha, x);
    const long double log_w =
        log_const + std::log(x) - 2.0L * (std::log(std::fabs(p.lnm1)) + p.log_scale);
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(std::exp(log_w));
  }
  for (int i = 0; i < n; ++i) {
    if (!(rule.weights[i] >= 0.0) || !std::isfinite(rule.nodes[i]) ||
        (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))) {
      throw QuadratureError("gauss_laguerre: degenerate rule (alpha=" + std::to_string(alpha) +
                            ", N=" + std::to_string(n) + ")");
    }
  }
  return rule;
}

LegendreRule build_gauss_legendre(int n) {
  LegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::complex<double> checked(std::complex<double> v, double t) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw QuadratureError("non-finite integrand value at t = " + std::to_string(t));
  }
  return v;
}

}  // namespace

double QuadratureRule::weight(std::size_t i) const { return weights.at(i) * std::exp(log_scale); }

const QuadratureRule& gauss_laguerre(int alpha, int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: N must be >= 1");
  if (alpha < 0) throw std::invalid_argument("gauss_laguerre: alpha must be >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{alpha, n}];
  if (!slot) slot = std::make_unique<const QuadratureRule>(build_gauss_laguerre(alpha, n));
  return *slot;
}

const LegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: N must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const LegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const LegendreRule>(build_gauss_legendre(n));
  return *slot;
}

std::complex<double> integrate_normalized(const RealFunction& f, const QuadratureRule& rule) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weights[i] * checked(f(rule.nodes[i]), rule.nodes[i]);
  }
  return acc;
}

std::complex<double> integrate_halfline(const RealFunction& f, const QuadratureRule& rule) {
  return integrate_normalized(f, rule) * std::exp(rule.log_scale);
}

QuadratureRule lebesgue_rule(std::span<const double> breakpoints, int nodes_per_panel,
                             double reach) {
  if (nodes_per_panel < 1) throw std::invalid_argument("lebesgue_rule: nodes_per_panel < 1");
  reach = std::max(reach, 0.0);
  const double spread = std::sqrt(reach + 1.0);
  const double end = reach + 1.0 + 12.0 * spread + 40.0;
  const double width = 0.5 * std::max(2.0, spread);

  std::vector<double> cuts{0.0};
  for (double b : breakpoints) {
    if (!std::isfinite(b)) throw std::invalid_argument("lebesgue_rule: non-finite breakpoint");
    if (b > 0.0 && b < end) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(end);

  const LegendreRule& leg = gauss_legendre(nodes_per_panel);
  QuadratureRule rule;
  rule.alpha = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c];
    const double hi = cuts[c + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    for (int p = 0; p < panels; ++p) {
      const double t0 = lo + (hi - lo) * p / panels;
      const double t1 = lo + (hi - lo) * (p + 1) / panels;
      const double s0 = std::sqrt(t0);
      const double s1 = std::sqrt(t1);
      const double mid = 0.5 * (s0 + s1);
      const double half = 0.5 * (s1 - s0);
      for (int i = 0; i < nodes_per_panel; ++i) {
        const double s = mid + half * leg.nodes[i];
        rule.nodes.push_back(s * s);
        rule.weights.push_back(half * leg.weights[i] * 2.0 * s);
      }
    }
  }
  const QuadratureRule& tail = gauss_laguerre(0, nodes_per_panel);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    rule.nodes.push_back(end + tail.nodes[i]);
    rule.weights.push_back(std::exp(std::log(tail.weights[i]) + tail.nodes[i]));
  }
  return rule;
}

QuadratureRule piecewise_rule(int alpha, std::span<const double> breakpoints,
                              int nodes_per_panel, double reach) {
  if (alpha < 0) throw std::invalid_argument("piecewise_rule: alpha must be >= 0");
  QuadratureRule rule = lebesgue_rule(breakpoints, nodes_per_panel, std::max<double>(reach, alpha));
  rule.alpha = alpha;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    rule.weights[i] *= std::exp(alpha * std::log(t) - t);
  }
  return rule;
}

std::complex<double> integrate_piecewise(const RealFunction& f, int weight_alpha,
                                         std::span<const double> breakpoints,
                                         int nodes_per_piece) {
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] < breakpoints[i - 1]) {
      throw std::invalid_argument("integrate_piecewise: breakpoints must be sorted");
    }
  }
  return integrate_halfline(f, piecewise_rule(weight_alpha, breakpoints, nodes_per_piece));
}

std::complex<double> circle_point(int j, int m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / m);
}

std::complex<double> circle_average(const PlaneFunction& g, const CircleRule& rule) {
  if (rule.size < 1) throw std::invalid_argument("circle_average: empty rule");
  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < rule.size; ++j) acc += g(circle_point(j, rule.size));
  return acc / static_cast<double>(rule.size);
}

PlaneSamples plane_samples(const QuadratureRule& radial_rule, const CircleRule& circle_rule) {
  if (radial_rule.alpha != 0) {
    throw std::invalid_argument("plane_samples: radial rule must have alpha = 0");
  }
  if (circle_rule.size < 1) throw std::invalid_argument("plane_samples: empty circle rule");
  PlaneSamples out;
  const std::size_t total = radial_rule.size() * static_cast<std::size_t>(circle_rule.size);
  out.points.reserve(total);
  out.weights.reserve(total);
  std::vector<std::complex<double>> taus(circle_rule.size);
  for (int j = 0; j < circle_rule.size; ++j) taus[j] = circle_point(j, circle_rule.size);
  for (std::size_t i = 0; i < radial_rule.size(); ++i) {
    const double r = std::sqrt(radial_rule.nodes[i]);
    const double w = radial_rule.weight(i) / circle_rule.size;
    for (const auto& tau : taus) {
      out.points.push_back(r * tau);
      out.weights.push_back(w);
    }
  }
  return out;
}

std::complex<double> plane_inner(const PlaneFunction& f, const PlaneFunction& g,
                                 const QuadratureRule& radial_rule,
                                 const CircleRule& circle_rule) {
  const PlaneSamples samples = plane_samples(radial_rule, circle_rule);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    const auto z = samples.points[i];
    const auto value = f(z) * std::conj(g(z));
    acc += samples.weights[i] * checked(value, std::norm(z));
  }
  return acc;
}

}  // namespace polyfock
