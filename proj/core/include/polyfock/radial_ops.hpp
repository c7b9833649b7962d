#ifndef POLYFOCK_RADIAL_OPS_HPP
#define POLYFOCK_RADIAL_OPS_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/fock_spaces.hpp"
#include "polyfock/quadrature.hpp"

namespace polyfock {

/// Block sequence (A_d) of a radial operator on F_n, for d = d_min..d_max
/// with d_min = 1 - n. Block d has order min(n, n + d) and
/// A_d(j, k) = <S b_{d+k,k}, b_{d+j,j}>, j and k counted from max(0, -d).
struct RadialOperatorRep {
  int n = 1;
  int d_min = 0;
  int truncation = 0;
  std::vector<Eigen::MatrixXcd> blocks;

  [[nodiscard]] int d_max() const { return d_min + static_cast<int>(blocks.size()) - 1; }
  [[nodiscard]] const Eigen::MatrixXcd& block(int d) const;
};

/// Diagonal (eigenvalue) sequence of a radial operator on F_(n).
struct DiagonalRep {
  int n = 1;
  int truncation = 0;
  std::vector<std::complex<double>> eigenvalues;
};

/// Order of block d in F_n: min(n, n + d).
int block_size(int n, int d);

/// Largest d whose block is fully inside a truncation P of F_n: P - n + 1.
int max_covered_diagonal(int n, int truncation);

inline constexpr double kRadialTolerance = 1e-10;

/// {i, e^{i}, e^{i sqrt 2}}.
std::vector<std::complex<double>> default_rotation_samples();

/// Diagonal of R_tau in the truncated basis: tau^(q-p).
Eigen::VectorXcd rotation_diagonal(const SpaceId& space, int truncation, std::complex<double> tau);

/// R_tau v: coefficient of b_{p,q} multiplied by tau^(q-p).
FockVector rotate_vector(const FockVector& v, std::complex<double> tau);

/// Exact Haar average of R_tau S R_tau^{-1}: keeps entries between indices
/// with the same diagonal p - q and zeroes the rest.
BasisMatrix radialize_matrix(const BasisMatrix& s);

/// The same average discretized with `rule`; equal to radialize_matrix when
/// rule.size exceeds twice the largest |p - q| in the truncation.
BasisMatrix radialize_numeric(const BasisMatrix& s, const CircleRule& rule);

/// Frobenius norm of the entries between different diagonals, relative to
/// the Frobenius norm of S (0 for S = 0).
double off_block_mass(const BasisMatrix& s);

/// Frobenius norm off the main diagonal relative to the whole matrix.
double off_diagonal_mass(const Eigen::MatrixXcd& m);

double spectral_norm(const Eigen::MatrixXcd& m);

/// Blocks d = 1-n..d_max of S on F_n. Throws NotRadialError when the
/// off-block mass exceeds tol, std::invalid_argument when d_max is not
/// covered by the truncation.
RadialOperatorRep phi_n(const BasisMatrix& s, int d_max, double tol = kRadialTolerance);

/// Embeds the blocks into the truncated basis of F_n; diagonals beyond
/// rep.d_max and partial diagonals are left zero.
BasisMatrix assemble_blocks(const RadialOperatorRep& rep, int truncation);

/// Diagonal entries p = 0..p_max of S on F_(n). Throws NotRadialError when
/// the off-diagonal mass exceeds tol.
DiagonalRep phi_true(const BasisMatrix& s, int p_max, double tol = kRadialTolerance);

/// Coefficients of a vector on one diagonal, as (index, value) pairs.
using DiagonalVector = std::vector<std::pair<HermiteIndex, std::complex<double>>>;

/// One term xi <f, u> v of a finite-rank radial operator; u and v must lie
/// on diagonal d.
struct FiniteRankTerm {
  int d = 0;
  std::complex<double> xi{1.0, 0.0};
  DiagonalVector u;
  DiagonalVector v;
};

/// Matrix of S f = sum xi_k <f, u_k> v_k on the truncated basis of F_n.
BasisMatrix finite_rank_radial(int n, int truncation, const std::vector<FiniteRankTerm>& terms);

struct RadialityReport {
  bool radial = false;
  /// max over the sampled tau of ||R_tau S - S R_tau||_2.
  double max_commutator_norm = 0.0;
  double off_block_mass = 0.0;
};

/// S is reported radial when the largest commutator norm is at most
/// tol * max(1, ||S||_2).
RadialityReport is_radial(const BasisMatrix& s,
                          const std::vector<std::complex<double>>& taus = default_rotation_samples(),
                          double tol = kRadialTolerance);

}  // namespace polyfock

#endif  // POLYFOCK_RADIAL_OPS_HPP
