#ifndef POLYFOCK_LAGUERRE_HPP
#define POLYFOCK_LAGUERRE_HPP

#include <vector>

#include "polyfock/exact_poly.hpp"

namespace polyfock {

/// Degree n and order alpha of an associated Laguerre polynomial L_n^(alpha).
struct LaguerreParams {
  int n = 0;
  int alpha = 0;
};

/// log(n!) from a table filled once at first use.
double log_factorial(int n);

/// L_n^(alpha)(x) by the three-term recurrence
///   k L_k = (2k - 1 + alpha - x) L_{k-1} - (k - 1 + alpha) L_{k-2}.
/// Throws std::domain_error for x < 0 or negative parameters.
double laguerre_eval(LaguerreParams params, double x);

/// Values L_0^(alpha)(x), ..., L_n^(alpha)(x) in one pass.
std::vector<double> laguerre_eval_all(LaguerreParams params, double x);

/// Exact coefficients c_k of L_n^(alpha)(x) = sum_k c_k x^k.
std::vector<Rational> laguerre_exact(LaguerreParams params);

/// Normalized Laguerre function
///   l_m^(alpha)(t) = sqrt(m!/(m+alpha)!) t^(alpha/2) e^(-t/2) L_m^(alpha)(t),
/// evaluated with the prefactor in log space so that large alpha does not
/// overflow.
double laguerre_function(int m, int alpha, double t);

/// l_m^(alpha)(t) * exp(t/2). This is the radial factor of the complex
/// Hermite basis and is finite wherever l_m^(alpha) is.
double laguerre_function_unweighted(int m, int alpha, double t);

/// Checks e^{xy} d^n/dx^n (e^{-xy} x^{n+alpha}) = n! x^alpha L_n^(alpha)(xy)
/// by exact expansion. Returns true iff the two sides agree coefficientwise.
bool rodrigues_identity_holds(int n, int alpha);

inline constexpr int kDefaultSupGrid = 4096;

/// max |l_m^(alpha)(t)| over `grid` equispaced points of [0, x].
double laguerre_function_sup(int m, int alpha, double x, int grid = kDefaultSupGrid);

/// The closed-form upper bound
///   sqrt(m!) (m+1) (m+d)^m (1+x)^(m+d/2) / sqrt((m+d)!)
/// for sup_{0<=t<=x} |l_m^(d)(t)|, in log space.
double log_laguerre_function_sup_bound(int m, int d, double x);

}  // namespace polyfock

#endif  // POLYFOCK_LAGUERRE_HPP
