#include "polyfock/fock_spaces.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polyfock/errors.hpp"
#include "polyfock/laguerre.hpp"

namespace polyfock {

namespace {

void require_truncation(int truncation, const char* where) {
  if (truncation < 0) throw std::invalid_argument(std::string(where) + ": truncation must be >= 0");
}

std::complex<double> checked_exponent(std::complex<double> z, std::complex<double> w) {
  const std::complex<double> e = std::conj(z) * w;
  if (e.real() > kKernelExponentLimit) {
    throw OverflowError("kernel: Re(conj(z) w) = " + std::to_string(e.real()) +
                        " exceeds the plain-evaluation limit; use the log-scaled variant");
  }
  return e;
}

LogComplex log_kernel(int alpha, int n, std::complex<double> z, std::complex<double> w) {
  if (n < 1) throw std::invalid_argument("kernel: n must be >= 1");
  const std::complex<double> e = std::conj(z) * w;
  const double lag = laguerre_eval({n - 1, alpha}, std::norm(w - z));
  LogComplex out;
  if (lag == 0.0) {
    out.log_abs = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.log_abs = e.real() + std::log(std::abs(lag));
  out.arg = e.imag() + (lag < 0.0 ? std::numbers::pi : 0.0);
  return out;
}

// Variables of the four-variable kernel polynomial.
constexpr std::size_t kZ = 0;
constexpr std::size_t kZbar = 1;
constexpr std::size_t kW = 2;
constexpr std::size_t kWbar = 3;
using KernelPolynomial = Polynomial<4>;

KernelPolynomial laguerre_of_distance(int degree) {
  const KernelPolynomial x =
      (KernelPolynomial::variable(kW) - KernelPolynomial::variable(kZ)) *
      (KernelPolynomial::variable(kWbar) - KernelPolynomial::variable(kZbar));
  const std::vector<Rational> coeffs = laguerre_exact({degree, 0});
  KernelPolynomial out;
  KernelPolynomial power = KernelPolynomial::constant(ComplexRational(1));
  for (const auto& c : coeffs) {
    out += power * ComplexRational(c);
    power = power * x;
  }
  return out;
}

}  // namespace

std::string to_string(SpaceKind kind) { return kind == SpaceKind::poly ? "poly" : "true_poly"; }

std::optional<SpaceKind> parse_space_kind(const std::string& text) {
  if (text == "poly") return SpaceKind::poly;
  if (text == "true" || text == "true_poly") return SpaceKind::true_poly;
  return std::nullopt;
}

void validate(const SpaceId& space) {
  if (space.n < 1) throw std::invalid_argument("space order n must be >= 1");
}

std::vector<HermiteIndex> basis_indices(const SpaceId& space, int truncation) {
  validate(space);
  require_truncation(truncation, "basis_indices");
  std::vector<HermiteIndex> out;
  if (space.kind == SpaceKind::true_poly) {
    out.reserve(truncation + 1);
    for (int p = 0; p <= truncation; ++p) out.push_back({p, space.n - 1});
    return out;
  }
  out.reserve(static_cast<std::size_t>(space.n) * (truncation + 1));
  for (int q = 0; q < space.n; ++q) {
    for (int p = 0; p <= truncation; ++p) out.push_back({p, q});
  }
  return out;
}

std::optional<std::size_t> basis_position(const SpaceId& space, int truncation, HermiteIndex idx) {
  if (idx.p < 0 || idx.p > truncation || idx.q < 0) return std::nullopt;
  if (space.kind == SpaceKind::true_poly) {
    if (idx.q != space.n - 1) return std::nullopt;
    return static_cast<std::size_t>(idx.p);
  }
  if (idx.q >= space.n) return std::nullopt;
  return static_cast<std::size_t>(idx.q) * (truncation + 1) + idx.p;
}

void FockVector::validate() const {
  polyfock::validate(space);
  require_truncation(truncation, "FockVector");
  for (const auto& [idx, c] : coefficients) {
    if (!basis_position(space, truncation, idx)) {
      throw std::invalid_argument("FockVector: index (" + std::to_string(idx.p) + "," +
                                  std::to_string(idx.q) + ") is not in the truncated basis of " +
                                  to_string(space.kind) + "(" + std::to_string(space.n) + ")");
    }
  }
}

double FockVector::norm() const {
  double acc = 0.0;
  for (const auto& [idx, c] : coefficients) acc += std::norm(c);
  return std::sqrt(acc);
}

std::complex<double> FockVector::evaluate(std::complex<double> z) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [idx, c] : coefficients) acc += c * b_eval(idx, z);
  return acc;
}

void BasisMatrix::validate() const {
  const auto dim = static_cast<Eigen::Index>(basis_indices(space, truncation).size());
  if (entries.rows() != dim || entries.cols() != dim) {
    throw std::invalid_argument("BasisMatrix: shape " + std::to_string(entries.rows()) + "x" +
                                std::to_string(entries.cols()) + " does not match basis size " +
                                std::to_string(dim));
  }
}

BasisMatrix identity_matrix(const SpaceId& space, int truncation) {
  const auto dim = static_cast<Eigen::Index>(basis_indices(space, truncation).size());
  return {space, truncation, Eigen::MatrixXcd::Identity(dim, dim)};
}

std::complex<double> LogComplex::value() const {
  if (log_abs == -std::numeric_limits<double>::infinity()) return {0.0, 0.0};
  return std::polar(std::exp(log_abs), arg);
}

std::complex<double> kernel_true(int n, std::complex<double> z, std::complex<double> w) {
  if (n < 1) throw std::invalid_argument("kernel_true: n must be >= 1");
  const std::complex<double> e = checked_exponent(z, w);
  return std::exp(e) * laguerre_eval({n - 1, 0}, std::norm(w - z));
}

std::complex<double> kernel_poly(int n, std::complex<double> z, std::complex<double> w) {
  if (n < 1) throw std::invalid_argument("kernel_poly: n must be >= 1");
  const std::complex<double> e = checked_exponent(z, w);
  return std::exp(e) * laguerre_eval({n - 1, 1}, std::norm(w - z));
}

std::complex<double> kernel(const SpaceId& space, std::complex<double> z, std::complex<double> w) {
  return space.kind == SpaceKind::poly ? kernel_poly(space.n, z, w) : kernel_true(space.n, z, w);
}

LogComplex kernel_true_log(int n, std::complex<double> z, std::complex<double> w) {
  return log_kernel(0, n, z, w);
}

LogComplex kernel_poly_log(int n, std::complex<double> z, std::complex<double> w) {
  return log_kernel(1, n, z, w);
}

std::complex<double> kernel_partial_sum(const SpaceId& space, std::complex<double> z,
                                        std::complex<double> w, int truncation) {
  if (truncation < 1) throw std::invalid_argument("kernel_partial_sum: truncation must be >= 1");
  std::complex<double> acc{0.0, 0.0};
  for (const auto& idx : basis_indices(space, truncation)) {
    acc += std::conj(b_eval(idx, z)) * b_eval(idx, w);
  }
  return acc;
}

FockVector kernel_vector(const SpaceId& space, std::complex<double> z, int truncation) {
  FockVector v{space, truncation, {}};
  for (const auto& idx : basis_indices(space, truncation)) {
    v.coefficients[idx] = std::conj(b_eval(idx, z));
  }
  return v;
}

bool kernel_recursion_check(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("kernel_recursion_check: need 1 <= n <= 8");
  // K = e^{zbar w} P.  (wbar - d/dw) K = e^{zbar w} ((wbar - zbar) P - dP/dw),
  // then (z - d/dzbar) of e^{zbar w} Q = e^{zbar w} ((z - w) Q - dQ/dzbar).
  const KernelPolynomial p = laguerre_of_distance(n - 1);
  const KernelPolynomial wbar_minus_zbar =
      KernelPolynomial::variable(kWbar) - KernelPolynomial::variable(kZbar);
  const KernelPolynomial z_minus_w = KernelPolynomial::variable(kZ) - KernelPolynomial::variable(kW);
  const KernelPolynomial q = wbar_minus_zbar * p - p.derivative(kW);
  const KernelPolynomial r = z_minus_w * q - q.derivative(kZbar);
  return r * ComplexRational(Rational(1, n)) == laguerre_of_distance(n);
}

FockVector creation_apply(int n, const FockVector& v) {
  if (v.space != SpaceId{SpaceKind::true_poly, n}) {
    throw std::invalid_argument("creation_apply: vector does not live in true_poly(" +
                                std::to_string(n) + ")");
  }
  v.validate();
  FockVector out{{SpaceKind::true_poly, n + 1}, v.truncation, {}};
  for (const auto& [idx, c] : v.coefficients) out.coefficients[{idx.p, n}] = c;
  return out;
}

double evaluation_bound(int n, std::complex<double> z) {
  return std::exp(log_evaluation_bound(n, z));
}

double log_evaluation_bound(int n, std::complex<double> z) {
  if (n < 1) throw std::invalid_argument("evaluation_bound: n must be >= 1");
  return 0.5 * std::log(static_cast<double>(n)) + 0.5 * std::norm(z);
}

BerezinResult berezin(const BasisMatrix& s, std::complex<double> z) {
  s.validate();
  const auto indices = basis_indices(s.space, s.truncation);
  Eigen::VectorXcd bz(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) bz(static_cast<Eigen::Index>(i)) = b_eval(indices[i], z);
  const double truncated = bz.squaredNorm();
  BerezinResult out;
  out.value = bz.dot(s.entries * bz) / truncated;
  const double closed = std::exp(log_kernel(s.space.kind == SpaceKind::poly ? 1 : 0, s.space.n, z, z).log_abs);
  out.kernel_tail = std::abs(truncated - closed) / closed;
  out.truncation_warning = out.kernel_tail > kBerezinTailTolerance;
  return out;
}

BasisMatrix englis_operator(int n, int truncation) {
  if (n < 2) throw std::invalid_argument("englis_operator: needs n >= 2");
  if (truncation < 1) throw std::invalid_argument("englis_operator: truncation must be >= 1");
  const SpaceId space{SpaceKind::poly, n};
  BasisMatrix m = identity_matrix(space, truncation);
  m.entries.setZero();
  const auto b00 = static_cast<Eigen::Index>(*basis_position(space, truncation, {0, 0}));
  const auto b10 = static_cast<Eigen::Index>(*basis_position(space, truncation, {1, 0}));
  const auto b01 = static_cast<Eigen::Index>(*basis_position(space, truncation, {0, 1}));
  m.entries(b10, b00) = 1.0;
  m.entries(b00, b01) = -1.0;
  return m;
}

KernelSample kernel_sample(const SpaceId& space, std::complex<double> z, std::complex<double> w) {
  return {space.n, space.kind, z, w, kernel(space, z, w)};
}

}  // namespace polyfock
