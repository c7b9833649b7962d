#include "polyfock/hermite_basis.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "polyfock/laguerre.hpp"

namespace polyfock {

namespace {

void check_index(HermiteIndex idx, int cap, const char* where) {
  if (idx.p < 0 || idx.q < 0) {
    throw std::invalid_argument(std::string(where) + ": negative index");
  }
  if (idx.p > cap || idx.q > cap) {
    throw std::invalid_argument(std::string(where) + ": index (" + std::to_string(idx.p) + "," +
                                std::to_string(idx.q) + ") above cap " + std::to_string(cap));
  }
}

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

ScaledPolynomial b_exact(HermiteIndex idx, int cap) {
  check_index(idx, cap, "b_exact");
  BiPolynomial body = BiPolynomial::constant(ComplexRational(1));
  for (int i = 0; i < idx.p; ++i) body = creation_adagger_bar(body);
  for (int i = 0; i < idx.q; ++i) body = creation_adagger(body);
  return {std::move(body), Rational(1) / Rational(factorial(idx.p) * factorial(idx.q))};
}

ScaledPolynomial b_coeffs(HermiteIndex idx, int cap) {
  check_index(idx, cap, "b_coeffs");
  const int lo = idx.m();
  const int hi = std::max(idx.p, idx.q);
  BiPolynomial body;
  for (int s = 0; s <= lo; ++s) {
    Rational c(binomial(hi, s), factorial(lo - s));
    if (s % 2 == 1) c = -c;
    body.add_term({idx.p - s, idx.q - s}, ComplexRational(c));
  }
  return {std::move(body), Rational(factorial(lo), factorial(hi))};
}

bool equivalent(const ScaledPolynomial& f, const ScaledPolynomial& g) {
  std::set<BiPolynomial::Exponent> keys;
  for (const auto& [e, c] : f.body.terms()) keys.insert(e);
  for (const auto& [e, c] : g.body.terms()) keys.insert(e);
  for (const auto& e : keys) {
    const ComplexRational a = f.body.coefficient(e);
    const ComplexRational b = g.body.coefficient(e);
    if (a.is_zero() || b.is_zero()) {
      if (!(a.is_zero() && b.is_zero())) return false;
      continue;
    }
    // sqrt(sf) a == sqrt(sg) b  <=>  a conj(b) > 0 and sf |a|^2 == sg |b|^2
    const ComplexRational cross = a * b.conj();
    if (cross.im != 0 || cross.re <= 0) return false;
    if (f.scale_sq * a.norm() != g.scale_sq * b.norm()) return false;
  }
  return true;
}

std::complex<double> b_eval_polar(HermiteIndex idx, double r, std::complex<double> tau) {
  if (idx.p < 0 || idx.q < 0) throw std::invalid_argument("b_eval_polar: negative index");
  if (!(r >= 0.0)) throw std::domain_error("b_eval_polar: r must be non-negative");
  if (std::abs(std::abs(tau) - 1.0) > 1e-12) {
    throw std::invalid_argument("b_eval_polar: tau is not on the unit circle");
  }
  const int m = idx.m();
  const int d = idx.d();
  const double radial = laguerre_function_unweighted(m, std::abs(d), r * r);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const std::complex<double> phase = (d == 0) ? std::complex<double>(1.0, 0.0)
                                              : std::polar(1.0, d * std::arg(tau));
  return sign * radial * phase;
}

std::complex<double> b_eval(HermiteIndex idx, std::complex<double> z) {
  const double r = std::abs(z);
  const std::complex<double> tau = (r > 0.0) ? z / r : std::complex<double>(1.0, 0.0);
  return b_eval_polar(idx, r, tau / std::abs(tau));
}

double SignedSqrt::to_double() const { return sign * std::sqrt(polyfock::to_double(square)); }

SignedSqrt monomial_b_inner(int d, int k, int q) {
  if (d + k < 0 || d + q < 0 || k < 0 || q < 0 || k > q) {
    throw std::invalid_argument("monomial_b_inner: need k <= q and non-negative indices");
  }
  const ScaledPolynomial b = b_coeffs({d + q, q}, std::max(d + q, q));
  const ComplexRational v = gaussian_inner(monomial(d + k, k), b.body);
  if (v.im != 0) throw std::logic_error("monomial_b_inner: non-real inner product");
  return {sign_of(v.re), b.scale_sq * v.re * v.re};
}

std::vector<HermiteIndex> truncated_diagonal(const DiagonalSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("truncated_diagonal: count must be >= 1");
  if (spec.n) {
    const int n = *spec.n;
    if (n < 1) throw std::invalid_argument("truncated_diagonal: n must be >= 1");
    if (spec.d < -n + 1) throw std::invalid_argument("truncated_diagonal: d < -n + 1");
    if (spec.count != std::min(n, n + spec.d)) {
      throw std::invalid_argument("truncated_diagonal: count must equal min(n, n + d)");
    }
  }
  const int start = std::max(0, -spec.d);
  std::vector<HermiteIndex> out;
  out.reserve(spec.count);
  for (int k = start; k < start + spec.count; ++k) out.push_back({spec.d + k, k});
  return out;
}

}  // namespace polyfock
