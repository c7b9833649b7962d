#ifndef POLYFOCK_HERMITE_BASIS_HPP
#define POLYFOCK_HERMITE_BASIS_HPP

#include <compare>
#include <complex>
#include <optional>
#include <vector>

#include "polyfock/exact_poly.hpp"

namespace polyfock {

/// Index (p, q) of the complex Hermite polynomial b_{p,q}.
struct HermiteIndex {
  int p = 0;
  int q = 0;

  /// Diagonal index p - q.
  [[nodiscard]] constexpr int d() const { return p - q; }
  /// min(p, q): degree of the Laguerre factor.
  [[nodiscard]] constexpr int m() const { return p < q ? p : q; }

  friend constexpr auto operator<=>(const HermiteIndex&, const HermiteIndex&) = default;
};

/// The first `count` basis elements of diagonal d, optionally as the
/// truncated diagonal D_{d, min(n, n+d)} of the n-analytic space.
struct DiagonalSpec {
  int d = 0;
  int count = 1;
  std::optional<int> n;
};

inline constexpr int kExactIndexCap = 32;

/// b_{p,q} = (p! q!)^{-1/2} (A^dagger)^q (Abar^dagger)^p 1, built by applying
/// the creation operators to the constant polynomial.
ScaledPolynomial b_exact(HermiteIndex idx, int cap = kExactIndexCap);

/// b_{p,q} from its closed-form monomial expansion
///   sqrt(m!/M!) sum_s binom(M, s) (-1)^s / (m-s)! m_{p-s,q-s},
/// with m = min(p,q), M = max(p,q).
ScaledPolynomial b_coeffs(HermiteIndex idx, int cap = kExactIndexCap);

/// True iff sqrt(f.scale_sq) f.body == sqrt(g.scale_sq) g.body as
/// polynomials, decided exactly.
bool equivalent(const ScaledPolynomial& f, const ScaledPolynomial& g);

/// b_{p,q}(z) in floating point through the Laguerre form; never through
/// the monomial expansion.
std::complex<double> b_eval(HermiteIndex idx, std::complex<double> z);

/// b_{p,q}(r tau) = (-1)^m tau^(p-q) e^{r^2/2} l_m^(|p-q|)(r^2).
/// Throws std::invalid_argument if |tau| differs from 1 by more than 1e-12.
std::complex<double> b_eval_polar(HermiteIndex idx, double r, std::complex<double> tau);

/// sign * sqrt(square), kept exact.
struct SignedSqrt {
  int sign = 0;
  Rational square{0};

  [[nodiscard]] double to_double() const;
};

/// <m_{d+k,k}, b_{d+q,q}> computed from the exact expansion.
/// Requires k <= q and all four indices non-negative.
SignedSqrt monomial_b_inner(int d, int k, int q);

/// Indices (d+k, k) for k = max(0,-d), ..., max(0,-d) + count - 1.
std::vector<HermiteIndex> truncated_diagonal(const DiagonalSpec& spec);

}  // namespace polyfock

#endif  // POLYFOCK_HERMITE_BASIS_HPP
