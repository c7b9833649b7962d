#ifndef POLYFOCK_TOEPLITZ_HPP
#define POLYFOCK_TOEPLITZ_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyfock/fock_spaces.hpp"
#include "polyfock/quadrature.hpp"
#include "polyfock/radial_ops.hpp"

namespace polyfock {

/// A radial symbol a(r), r = |z| >= 0. The callable must be safe to invoke
/// from several threads at once.
struct RadialSymbol {
  std::string name;
  std::function<std::complex<double>(double)> evaluate;
  /// Sorted radii where a jumps.
  std::vector<double> breakpoints;
  std::optional<std::complex<double>> limit_at_infinity;
  /// sup |a|; infinity for unbounded symbols.
  double bound = std::numeric_limits<double>::infinity();
  /// a(sqrt t) is smooth in t, so Gauss-Laguerre in t converges fast.
  /// Symbols with jumps or a sqrt(t) dependence leave this false.
  bool smooth_in_t = false;

  [[nodiscard]] bool bounded() const { return std::isfinite(bound); }
};

RadialSymbol symbol_constant(std::complex<double> c);
/// 1_(0,u)(r).
RadialSymbol symbol_indicator(double u);
/// e^{-r^2/s^2}.
RadialSymbol symbol_gauss(double s);
/// 1/(1+r^2).
RadialSymbol symbol_rational();
/// e^{-r}.
RadialSymbol symbol_exp_decay();
/// 1/(1+r).
RadialSymbol symbol_inverse_linear();
/// r^2; unbounded.
RadialSymbol symbol_r_squared();

/// Parses const:c, indicator:u, gauss:s, rational, exp, inverse and r2.
/// Throws std::invalid_argument on anything else.
RadialSymbol parse_symbol(const std::string& text);

/// Relative accuracy that every beta value is self-checked against.
inline constexpr double kBetaTolerance = 1e-9;

struct BetaResult {
  std::complex<double> value;
  /// |I_N - I_2N| at the accepted refinement level.
  double self_check = 0.0;
  /// Number of nodes in the finer rule.
  int nodes = 0;
};

/// beta_{a,d,j,k} = int_0^inf a(sqrt t) l_{min(j,j+d)}^(|d|)(t) l_{min(k,k+d)}^(|d|)(t) dt.
///
/// Symbols smooth in t use the Gauss-Laguerre rule with alpha = |d|, which
/// absorbs the t^|d| factor of the Laguerre functions into the weight. Other
/// symbols use the composite rule cut at the squared breakpoints. Either
/// way the rule is refined until two levels agree to kBetaTolerance;
/// QuadratureError if that does not happen.
BetaResult beta_detailed(const RadialSymbol& a, int d, int j, int k);
std::complex<double> beta(const RadialSymbol& a, int d, int j, int k);

struct EigenvalueSequence {
  int n = 1;
  std::vector<std::complex<double>> values;
  /// Largest rule size used for any entry.
  int max_nodes = 0;
  /// The symbol has no finite bound, so |lambda| <= ||a|| is not enforced.
  bool unbounded_symbol = false;
};

/// lambda_{a,n}(p) = beta_{a, p-n+1, n-1, n-1} for p = 0..p_max.
/// Throws std::runtime_error if a bounded symbol yields |lambda| > ||a||.
EigenvalueSequence lambda_seq(const RadialSymbol& a, int n, int p_max);

/// int_0^{u^2} (l_{min(p,n-1)}^(|p-n+1|)(t))^2 dt.
double lambda_indicator(double u, int n, int p);

/// Block d of T_{n,a}: entry (j, k) is <a b_{d+k,k}, b_{d+j,j}>, which is
/// (-1)^(min(j,j+d) + min(k,k+d)) beta_{a,d,j,k} because of the sign in the
/// polar form of b. j, k run over max(0,-d)..n-1.
Eigen::MatrixXcd toeplitz_block(const RadialSymbol& a, int n, int d);

/// Blocks d = 1-n..d_max of T_{n,a}, recorded with truncation d_max + n - 1.
RadialOperatorRep toeplitz_rep(const RadialSymbol& a, int n, int d_max);

struct ToeplitzOptions {
  /// Radii where g jumps along rays.
  std::vector<double> radial_breakpoints;
  /// Angular samples; 0 picks 2 * max|d_i - d_j| + 64.
  int angles = 0;
  int panel_nodes = kDefaultPanelNodes;
};

/// Matrix of the Toeplitz operator with symbol g on the truncated basis,
/// entries <g b_i, b_j> by polar quadrature.
BasisMatrix toeplitz_matrix(const PlaneFunction& g, const SpaceId& space, int truncation,
                            const ToeplitzOptions& options = {});

/// Same with g(z) = a(|z|), using the symbol's breakpoints.
BasisMatrix toeplitz_matrix(const RadialSymbol& a, const SpaceId& space, int truncation,
                            int angles = 0);

struct LimitRow {
  int d = 0;
  std::complex<double> beta;
  double residual = 0.0;
};

/// |beta_{a,d,j,k} - delta_jk v| for each d; requires a limit v.
std::vector<LimitRow> limit_diagnostic(const RadialSymbol& a, int j, int k,
                                       const std::vector<int>& d_list);

struct SeparationResult {
  bool separated = false;
  std::optional<double> witness_u;
  double max_gap = 0.0;
};

inline constexpr double kSeparationGap = 1e-6;

/// Looks for u in u_grid with |lambda_indicator(u,n,p) - lambda_indicator(u,n,q)|
/// above kSeparationGap. q = nullopt stands for the point at infinity, where
/// u = 1 is used and lambda(p) > 0 is compared against the limit 0.
SeparationResult separation_check(int n, int p, std::optional<int> q,
                                  const std::vector<double>& u_grid);

}  // namespace polyfock

#endif  // POLYFOCK_TOEPLITZ_HPP
