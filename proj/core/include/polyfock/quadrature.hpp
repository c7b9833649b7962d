#ifndef POLYFOCK_QUADRATURE_HPP
#define POLYFOCK_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace polyfock {

using RealFunction = std::function<std::complex<double>(double)>;
using PlaneFunction = std::function<std::complex<double>(std::complex<double>)>;

/// Nodes and weights approximating  int_0^inf f(t) t^alpha e^{-t} dt.
///
/// Weights are stored scaled: the true weight of node i is
/// weights[i] * exp(log_scale). Gauss rules keep their weights normalized
/// to unit mass with log_scale = log(alpha!), so orders well past 170 stay
/// representable.
struct QuadratureRule {
  int alpha = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  double log_scale = 0.0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] double weight(std::size_t i) const;
};

/// Equispaced angles e^{2 pi i j / size} on the unit circle, equal weights.
struct CircleRule {
  int size = 64;
};

inline constexpr int kDefaultRadialNodes = 64;
inline constexpr int kDefaultAngles = 64;
inline constexpr int kDefaultPanelNodes = 16;

/// N-point generalized Gauss-Laguerre rule for t^alpha e^{-t}.
///
/// Nodes start from the eigenvalues of the Jacobi matrix
/// (diagonal 2k+alpha+1, off-diagonal sqrt(k(k+alpha))) and are polished by
/// Newton steps on L_N^(alpha); weights come from the closed form
///   w_i = Gamma(N+alpha+1) t_i / (N! (N+alpha)^2 L_{N-1}^(alpha)(t_i)^2)
/// evaluated in log space. Memoized per (alpha, N).
const QuadratureRule& gauss_laguerre(int alpha, int n);

/// N-point Gauss-Legendre nodes and weights on [-1, 1]. Memoized per N.
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const LegendreRule& gauss_legendre(int n);

/// sum_i w_i f(t_i). f receives the bare node; the weight t^alpha e^{-t}
/// is already in w_i. Throws QuadratureError on a non-finite sample.
std::complex<double> integrate_halfline(const RealFunction& f, const QuadratureRule& rule);

/// Like integrate_halfline but with the scale factor dropped, i.e. against
/// the probability density t^alpha e^{-t} / alpha!.
std::complex<double> integrate_normalized(const RealFunction& f, const QuadratureRule& rule);

/// Composite rule for  int_0^inf h(t) dt  (plain Lebesgue measure).
///
/// [0, T] is cut at every breakpoint and further into panels; each panel is
/// integrated by Gauss-Legendre in the variable s = sqrt(t), so integrands
/// that are smooth in |z| = sqrt(t) converge quickly. The region beyond T is
/// handled by a Gauss-Laguerre rule shifted to T. `reach` is the order of
/// the polynomial growth t^reach that the integrand's Gaussian factor must
/// overcome; it sets T and the panel width.
QuadratureRule lebesgue_rule(std::span<const double> breakpoints, int nodes_per_panel,
                             double reach);

/// Composite rule for  int_0^inf f(t) t^alpha e^{-t} dt  honoring the
/// breakpoints of f. Only valid while alpha! fits in a double (alpha <= 170).
QuadratureRule piecewise_rule(int alpha, std::span<const double> breakpoints,
                              int nodes_per_panel, double reach = 0.0);

/// int_0^inf f(t) t^alpha e^{-t} dt with f piecewise smooth between the
/// sorted breakpoints.
std::complex<double> integrate_piecewise(const RealFunction& f, int weight_alpha,
                                         std::span<const double> breakpoints,
                                         int nodes_per_piece = kDefaultPanelNodes);

/// (1/M) sum_j g(e^{2 pi i j / M}); exact for trigonometric polynomials of
/// degree below M.
std::complex<double> circle_average(const PlaneFunction& g, const CircleRule& rule);

/// The sample point e^{2 pi i j / M}.
std::complex<double> circle_point(int j, int m);

/// Tensor-product sample set for the Gaussian measure on the plane.
struct PlaneSamples {
  std::vector<std::complex<double>> points;
  std::vector<double> weights;
};

/// Samples z = sqrt(t) tau with weights w_t / M. The radial rule must be
/// for the weight e^{-t} (alpha = 0).
PlaneSamples plane_samples(const QuadratureRule& radial_rule, const CircleRule& circle_rule);

/// <f, g> in L2(C, gamma) by tensor quadrature.
std::complex<double> plane_inner(const PlaneFunction& f, const PlaneFunction& g,
                                 const QuadratureRule& radial_rule,
                                 const CircleRule& circle_rule);

}  // namespace polyfock

#endif  // POLYFOCK_QUADRATURE_HPP
