#ifndef POLYFOCK_FOCK_SPACES_HPP
#define POLYFOCK_FOCK_SPACES_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/hermite_basis.hpp"

namespace polyfock {

enum class SpaceKind { poly, true_poly };

/// F_n (kind poly) or the true-polyanalytic layer F_(n) (kind true_poly).
struct SpaceId {
  SpaceKind kind = SpaceKind::poly;
  int n = 1;

  friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

std::string to_string(SpaceKind kind);
/// Accepts "poly", "true" and "true_poly".
std::optional<SpaceKind> parse_space_kind(const std::string& text);

/// Throws std::invalid_argument unless n >= 1.
void validate(const SpaceId& space);

/// Basis indices of `space` with p <= truncation, in the fixed enumeration
/// order: for F_n, position q*(P+1) + p (q < n); for F_(n), position p of
/// b_{p,n-1}.
std::vector<HermiteIndex> basis_indices(const SpaceId& space, int truncation);

/// Position of idx in basis_indices(space, truncation), or nullopt if idx
/// is not part of the truncated basis.
std::optional<std::size_t> basis_position(const SpaceId& space, int truncation, HermiteIndex idx);

/// Finite expansion f = sum c_idx b_idx in a truncated basis of `space`.
struct FockVector {
  SpaceId space;
  int truncation = 0;
  std::map<HermiteIndex, std::complex<double>> coefficients;

  /// Throws std::invalid_argument if an index is outside the truncated basis.
  void validate() const;
  [[nodiscard]] double norm() const;
  [[nodiscard]] std::complex<double> evaluate(std::complex<double> z) const;
};

/// Matrix of an operator S in the truncated basis:
/// entries(j, i) = <S b_i, b_j> with i, j positions from basis_indices.
struct BasisMatrix {
  SpaceId space;
  int truncation = 0;
  Eigen::MatrixXcd entries;

  [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(entries.rows()); }
  /// Throws std::invalid_argument if the shape disagrees with the basis size.
  void validate() const;
};

BasisMatrix identity_matrix(const SpaceId& space, int truncation);

/// A complex value stored as log|v| and arg v; log_abs = -inf encodes 0.
struct LogComplex {
  double log_abs = 0.0;
  double arg = 0.0;

  [[nodiscard]] std::complex<double> value() const;
};

/// Largest Re(conj(z) w) for which the plain kernels are evaluated.
inline constexpr double kKernelExponentLimit = 700.0;

/// K_(n)(z, w) = e^{conj(z) w} L_{n-1}(|w - z|^2). Throws OverflowError if
/// Re(conj(z) w) exceeds kKernelExponentLimit.
std::complex<double> kernel_true(int n, std::complex<double> z, std::complex<double> w);
/// K_n(z, w) = e^{conj(z) w} L^(1)_{n-1}(|w - z|^2); same overflow rule.
std::complex<double> kernel_poly(int n, std::complex<double> z, std::complex<double> w);
std::complex<double> kernel(const SpaceId& space, std::complex<double> z, std::complex<double> w);

LogComplex kernel_true_log(int n, std::complex<double> z, std::complex<double> w);
LogComplex kernel_poly_log(int n, std::complex<double> z, std::complex<double> w);

/// sum over the truncated basis of conj(b(z)) b(w).
std::complex<double> kernel_partial_sum(const SpaceId& space, std::complex<double> z,
                                        std::complex<double> w, int truncation);

/// The kernel section K_z as a FockVector: coefficients conj(b_idx(z)).
FockVector kernel_vector(const SpaceId& space, std::complex<double> z, int truncation);

/// Symbolic check that (1/n)(z - d/dzbar)(wbar - d/dw) K_(n) equals K_(n+1),
/// writing K_(n) = e^{zbar w} P_n with P_n an exact polynomial in
/// z, zbar, w, wbar. Requires 1 <= n <= 8.
bool kernel_recursion_check(int n);

/// A^dagger_n: F_(n) -> F_(n+1), b_{p,n-1} -> b_{p,n}.
FockVector creation_apply(int n, const FockVector& v);

/// sqrt(n) e^{|z|^2/2}, the norm of point evaluation at z on F_n.
double evaluation_bound(int n, std::complex<double> z);
double log_evaluation_bound(int n, std::complex<double> z);

struct BerezinResult {
  std::complex<double> value;
  /// |truncated K(z,z) - closed-form K(z,z)| / K(z,z).
  double kernel_tail = 0.0;
  /// Set when kernel_tail exceeds kBerezinTailTolerance.
  bool truncation_warning = false;
};

inline constexpr double kBerezinTailTolerance = 1e-8;

/// Ber(S)(z) = (S K_z)(z) / K_z(z) with both kernels truncated to the
/// basis of S, so that Ber(I) = 1 exactly.
BerezinResult berezin(const BasisMatrix& s, std::complex<double> z);

/// Matrix on F_n (n >= 2) of S f = <f, conj(u)> v - <f, conj(v)> u with
/// u = b_{0,0}, v = b_{1,0}: S b_{0,0} = b_{1,0}, S b_{0,1} = -b_{0,0}.
BasisMatrix englis_operator(int n, int truncation);

struct KernelSample {
  int n = 1;
  SpaceKind kind = SpaceKind::poly;
  std::complex<double> z;
  std::complex<double> w;
  std::complex<double> value;
};

KernelSample kernel_sample(const SpaceId& space, std::complex<double> z, std::complex<double> w);

}  // namespace polyfock

#endif  // POLYFOCK_FOCK_SPACES_HPP
