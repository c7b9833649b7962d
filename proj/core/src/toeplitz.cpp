#include "polyfock/toeplitz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polyfock/errors.hpp"
#include "polyfock/laguerre.hpp"
#include "polyfock/parallel.hpp"

namespace polyfock {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("symbol: bad " + what + " '" + text + "'");
  }
  return value;
}

std::vector<double> squared(const std::vector<double>& radii) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(r * r);
  return out;
}

bool agrees(std::complex<double> coarse, std::complex<double> fine) {
  return std::abs(fine - coarse) <= kBetaTolerance * std::max(std::abs(fine), 1e-3);
}

// Gauss-Laguerre route: the t^alpha e^{-t} part of l_j l_k goes into the weight.
std::optional<BetaResult> beta_gauss(const RadialSymbol& a, int alpha, int mj, int mk) {
  const double log_prefactor = log_factorial(alpha) +
                               0.5 * (log_factorial(mj) + log_factorial(mk)) -
                               0.5 * (log_factorial(mj + alpha) + log_factorial(mk + alpha));
  const double prefactor = std::exp(log_prefactor);
  auto integrate = [&](int nodes) {
    const QuadratureRule& rule = gauss_laguerre(alpha, nodes);
    return prefactor * integrate_normalized(
                           [&](double t) {
                             return a.evaluate(std::sqrt(t)) * laguerre_eval({mj, alpha}, t) *
                                    laguerre_eval({mk, alpha}, t);
                           },
                           rule);
  };
  std::complex<double> coarse = integrate(64);
  for (int nodes = 128; nodes <= 512; nodes *= 2) {
    const std::complex<double> fine = integrate(nodes);
    if (agrees(coarse, fine)) return BetaResult{fine, std::abs(fine - coarse), nodes};
    coarse = fine;
  }
  return std::nullopt;
}

// Composite route on the plain integrand a(sqrt t) l_j(t) l_k(t).
std::optional<BetaResult> beta_composite(const RadialSymbol& a, int alpha, int mj, int mk) {
  const std::vector<double> cuts = squared(a.breakpoints);
  const double reach = alpha + 2.0 * std::max(mj, mk) + 1.0;
  auto integrate = [&](int panel_nodes, int* size) {
    const QuadratureRule rule = lebesgue_rule(cuts, panel_nodes, reach);
    *size = static_cast<int>(rule.size());
    return integrate_halfline(
        [&](double t) {
          return a.evaluate(std::sqrt(t)) * laguerre_function(mj, alpha, t) *
                 laguerre_function(mk, alpha, t);
        },
        rule);
  };
  int size = 0;
  std::complex<double> coarse = integrate(kDefaultPanelNodes, &size);
  for (int panel = 2 * kDefaultPanelNodes; panel <= 8 * kDefaultPanelNodes; panel *= 2) {
    const std::complex<double> fine = integrate(panel, &size);
    if (agrees(coarse, fine)) return BetaResult{fine, std::abs(fine - coarse), size};
    coarse = fine;
  }
  return std::nullopt;
}

void check_symbol(const RadialSymbol& a) {
  if (!a.evaluate) throw std::invalid_argument("symbol '" + a.name + "' has no callable");
  if (!std::is_sorted(a.breakpoints.begin(), a.breakpoints.end())) {
    throw std::invalid_argument("symbol '" + a.name + "': breakpoints must be sorted");
  }
}

}  // namespace

RadialSymbol symbol_constant(std::complex<double> c) {
  RadialSymbol a;
  a.name = "const";
  a.evaluate = [c](double) { return c; };
  a.limit_at_infinity = c;
  a.bound = std::abs(c);
  a.smooth_in_t = true;
  return a;
}

RadialSymbol symbol_indicator(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("indicator: u must be > 0");
  RadialSymbol a;
  a.name = "indicator";
  a.evaluate = [u](double r) { return std::complex<double>(r < u ? 1.0 : 0.0, 0.0); };
  a.breakpoints = {u};
  a.limit_at_infinity = 0.0;
  a.bound = 1.0;
  return a;
}

RadialSymbol symbol_gauss(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("gauss: s must be > 0");
  RadialSymbol a;
  a.name = "gauss";
  a.evaluate = [s](double r) { return std::complex<double>(std::exp(-r * r / (s * s)), 0.0); };
  a.limit_at_infinity = 0.0;
  a.bound = 1.0;
  a.smooth_in_t = true;
  return a;
}

RadialSymbol symbol_rational() {
  RadialSymbol a;
  a.name = "rational";
  a.evaluate = [](double r) { return std::complex<double>(1.0 / (1.0 + r * r), 0.0); };
  a.limit_at_infinity = 0.0;
  a.bound = 1.0;
  // pole at t = -1 slows Gauss-Laguerre down; the composite rule is faster
  return a;
}

RadialSymbol symbol_exp_decay() {
  RadialSymbol a;
  a.name = "exp";
  a.evaluate = [](double r) { return std::complex<double>(std::exp(-r), 0.0); };
  a.limit_at_infinity = 0.0;
  a.bound = 1.0;
  return a;
}

RadialSymbol symbol_inverse_linear() {
  RadialSymbol a;
  a.name = "inverse";
  a.evaluate = [](double r) { return std::complex<double>(1.0 / (1.0 + r), 0.0); };
  a.limit_at_infinity = 0.0;
  a.bound = 1.0;
  return a;
}

RadialSymbol symbol_r_squared() {
  RadialSymbol a;
  a.name = "r2";
  a.evaluate = [](double r) { return std::complex<double>(r * r, 0.0); };
  a.smooth_in_t = true;
  return a;
}

RadialSymbol parse_symbol(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? text.substr(colon + 1) : std::string();
  auto no_arg = [&](RadialSymbol s) {
    if (has_arg) throw std::invalid_argument("symbol '" + head + "' takes no argument");
    return s;
  };
  if (head == "const" && has_arg) {
    RadialSymbol a = symbol_constant(parse_number(arg, "constant"));
    a.name = text;
    return a;
  }
  if (head == "indicator" && has_arg) {
    RadialSymbol a = symbol_indicator(parse_number(arg, "radius"));
    a.name = text;
    return a;
  }
  if (head == "gauss" && has_arg) {
    RadialSymbol a = symbol_gauss(parse_number(arg, "width"));
    a.name = text;
    return a;
  }
  if (head == "rational") return no_arg(symbol_rational());
  if (head == "exp") return no_arg(symbol_exp_decay());
  if (head == "inverse") return no_arg(symbol_inverse_linear());
  if (head == "r2") return no_arg(symbol_r_squared());
  throw std::invalid_argument("unknown symbol '" + text + "'");
}

BetaResult beta_detailed(const RadialSymbol& a, int d, int j, int k) {
  check_symbol(a);
  if (j < 0 || k < 0 || j + d < 0 || k + d < 0) {
    throw std::invalid_argument("beta: need j, k, j+d, k+d >= 0");
  }
  const int alpha = std::abs(d);
  const int mj = std::min(j, j + d);
  const int mk = std::min(k, k + d);
  if (a.smooth_in_t) {
    if (auto r = beta_gauss(a, alpha, mj, mk)) return *r;
  }
  if (auto r = beta_composite(a, alpha, mj, mk)) return *r;
  throw QuadratureError("beta: no convergence for symbol '" + a.name + "' at d=" +
                        std::to_string(d) + ", j=" + std::to_string(j) + ", k=" +
                        std::to_string(k));
}

std::complex<double> beta(const RadialSymbol& a, int d, int j, int k) {
  return beta_detailed(a, d, j, k).value;
}

EigenvalueSequence lambda_seq(const RadialSymbol& a, int n, int p_max) {
  if (n < 1) throw std::invalid_argument("lambda_seq: n must be >= 1");
  if (p_max < 0) throw std::invalid_argument("lambda_seq: p_max must be >= 0");
  check_symbol(a);
  EigenvalueSequence out;
  out.n = n;
  out.unbounded_symbol = !a.bounded();
  out.values.resize(static_cast<std::size_t>(p_max) + 1);
  std::vector<int> nodes(out.values.size());
  parallel_for(out.values.size(), [&](std::size_t p) {
    const BetaResult r = beta_detailed(a, static_cast<int>(p) - n + 1, n - 1, n - 1);
    out.values[p] = r.value;
    nodes[p] = r.nodes;
  });
  out.max_nodes = *std::max_element(nodes.begin(), nodes.end());
  if (a.bounded()) {
    for (std::size_t p = 0; p < out.values.size(); ++p) {
      if (std::abs(out.values[p]) > a.bound * (1.0 + 1e-9) + 1e-12) {
        throw std::runtime_error("lambda_seq: |lambda(" + std::to_string(p) +
                               ")| exceeds the symbol bound");
      }
    }
  }
  return out;
}

double lambda_indicator(double u, int n, int p) {
  if (n < 1) throw std::invalid_argument("lambda_indicator: n must be >= 1");
  if (p < 0) throw std::invalid_argument("lambda_indicator: p must be >= 0");
  return beta(symbol_indicator(u), p - n + 1, n - 1, n - 1).real();
}

Eigen::MatrixXcd toeplitz_block(const RadialSymbol& a, int n, int d) {
  const int size = block_size(n, d);
  const int start = std::max(0, -d);
  Eigen::MatrixXcd out(size, size);
  for (int j = 0; j < size; ++j) {
    for (int k = j; k < size; ++k) {
      const int parity = (std::min(start + j, start + j + d) + std::min(start + k, start + k + d)) % 2;
      out(j, k) = (parity == 0 ? 1.0 : -1.0) * beta(a, d, start + j, start + k);
      out(k, j) = out(j, k);
    }
  }
  return out;
}

RadialOperatorRep toeplitz_rep(const RadialSymbol& a, int n, int d_max) {
  if (n < 1) throw std::invalid_argument("toeplitz_rep: n must be >= 1");
  if (d_max < 1 - n) throw std::invalid_argument("toeplitz_rep: d_max < 1 - n");
  RadialOperatorRep rep{n, 1 - n, d_max + n - 1, {}};
  rep.blocks.resize(static_cast<std::size_t>(d_max - rep.d_min + 1));
  parallel_for(rep.blocks.size(), [&](std::size_t i) {
    rep.blocks[i] = toeplitz_block(a, n, rep.d_min + static_cast<int>(i));
  });
  return rep;
}

BasisMatrix toeplitz_matrix(const PlaneFunction& g, const SpaceId& space, int truncation,
                            const ToeplitzOptions& options) {
  const auto indices = basis_indices(space, truncation);
  const auto dim = static_cast<Eigen::Index>(indices.size());
  int max_abs_d = 0;
  for (const auto& idx : indices) max_abs_d = std::max(max_abs_d, std::abs(idx.d()));
  const int spread = 2 * max_abs_d;
  const int angles = options.angles > 0 ? options.angles : 2 * spread + 64;

  const QuadratureRule radial =
      lebesgue_rule(squared(options.radial_breakpoints), options.panel_nodes,
                    2.0 * (truncation + space.n));
  const auto nodes = static_cast<Eigen::Index>(radial.size());

  // ell(r, i) = (-1)^m l_m^(|d|)(t_r): the radial factor of b_i e^{-|z|^2/2}.
  Eigen::MatrixXd ell(nodes, dim);
  // fourier(r, s) = mean over the circle of g(sqrt(t_r) tau) tau^(s - spread).
  Eigen::MatrixXcd fourier(nodes, 2 * spread + 1);
  std::vector<std::complex<double>> roots(angles);
  for (int l = 0; l < angles; ++l) roots[l] = circle_point(l, angles);

  parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t ri) {
    const auto r = static_cast<Eigen::Index>(ri);
    const double t = radial.nodes[ri];
    const double radius = std::sqrt(t);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& idx = indices[static_cast<std::size_t>(i)];
      const double sign = idx.m() % 2 == 0 ? 1.0 : -1.0;
      ell(r, i) = sign * laguerre_function(idx.m(), std::abs(idx.d()), t);
    }
    std::vector<std::complex<double>> samples(angles);
    for (int l = 0; l < angles; ++l) {
      samples[l] = g(radius * roots[l]);
      if (!std::isfinite(samples[l].real()) || !std::isfinite(samples[l].imag())) {
        throw QuadratureError("toeplitz_matrix: non-finite symbol value at |z| = " +
                              std::to_string(radius));
      }
    }
    for (int s = -spread; s <= spread; ++s) {
      std::complex<double> acc{0.0, 0.0};
      const int shift = ((s % angles) + angles) % angles;
      for (int l = 0; l < angles; ++l) {
        acc += samples[l] * roots[static_cast<std::size_t>(
                                static_cast<long long>(l) * shift % angles)];
      }
      fourier(r, s + spread) = acc / static_cast<double>(angles);
    }
  });

  BasisMatrix out = identity_matrix(space, truncation);
  parallel_for(static_cast<std::size_t>(dim), [&](std::size_t ci) {
    const auto i = static_cast<Eigen::Index>(ci);
    const int di = indices[ci].d();
    for (Eigen::Index j = 0; j < dim; ++j) {
      const int shift = di - indices[static_cast<std::size_t>(j)].d() + spread;
      std::complex<double> acc{0.0, 0.0};
      for (Eigen::Index r = 0; r < nodes; ++r) {
        acc += radial.weights[static_cast<std::size_t>(r)] * ell(r, i) * ell(r, j) *
               fourier(r, shift);
      }
      out.entries(j, i) = acc * std::exp(radial.log_scale);
    }
  });
  return out;
}

BasisMatrix toeplitz_matrix(const RadialSymbol& a, const SpaceId& space, int truncation,
                            int angles) {
  check_symbol(a);
  ToeplitzOptions options;
  options.radial_breakpoints = a.breakpoints;
  options.angles = angles;
  return toeplitz_matrix([&a](std::complex<double> z) { return a.evaluate(std::abs(z)); }, space,
                         truncation, options);
}

std::vector<LimitRow> limit_diagnostic(const RadialSymbol& a, int j, int k,
                                       const std::vector<int>& d_list) {
  if (!a.limit_at_infinity) {
    throw std::invalid_argument("limit_diagnostic: symbol '" + a.name + "' has no declared limit");
  }
  const std::complex<double> target = j == k ? *a.limit_at_infinity : 0.0;
  std::vector<LimitRow> rows(d_list.size());
  parallel_for(d_list.size(), [&](std::size_t i) {
    const std::complex<double> b = beta(a, d_list[i], j, k);
    rows[i] = {d_list[i], b, std::abs(b - target)};
  });
  return rows;
}

SeparationResult separation_check(int n, int p, std::optional<int> q,
                                  const std::vector<double>& u_grid) {
  if (q && *q == p) throw std::invalid_argument("separation_check: p and q must differ");
  SeparationResult out;
  if (!q) {
    const double value = lambda_indicator(1.0, n, p);
    out.max_gap = value;
    out.separated = value > 0.0;
    if (out.separated) out.witness_u = 1.0;
    return out;
  }
  for (double u : u_grid) {
    const double gap = std::abs(lambda_indicator(u, n, p) - lambda_indicator(u, n, *q));
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > kSeparationGap && !out.witness_u) out.witness_u = u;
  }
  out.separated = out.witness_u.has_value();
  return out;
}

}  // namespace polyfock
