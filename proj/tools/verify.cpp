#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include <polyfock/errors.hpp>
#include <polyfock/exact_poly.hpp>
#include <polyfock/fock_spaces.hpp>
#include <polyfock/hermite_basis.hpp>
#include <polyfock/laguerre.hpp>
#include <polyfock/quadrature.hpp>
#include <polyfock/radial_ops.hpp>
#include <polyfock/toeplitz.hpp>

namespace polyfock::cli {

namespace {

using cd = std::complex<double>;

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void check(const std::string& name, double residual, double tolerance) {
    const bool pass = std::isfinite(residual) && residual <= tolerance;
    results_.push_back({suite_, name, residual, tolerance, pass});
  }
  /// Boolean facts are reported with residual 0 (holds) or 1 (violated).
  void require(const std::string& name, bool holds) { check(name, holds ? 0.0 : 1.0, 0.0); }

  /// Runs body; an exception becomes a failed check named after the step.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s.%s: %s\n", suite_.c_str(), name.c_str(), e.what());
      check(name, std::numeric_limits<double>::infinity(), 0.0);
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ComplexRational exact_point(cd z) { return {Rational(z.real()), Rational(z.imag())}; }

// Exact value of the polynomial body at a point with double coordinates.
cd exact_evaluate(const ScaledPolynomial& f, cd z) {
  const ComplexRational zr = exact_point(z);
  const ComplexRational zb = zr.conj();
  ComplexRational acc;
  for (const auto& [e, c] : f.body.terms()) {
    ComplexRational term = c;
    for (int i = 0; i < e[0]; ++i) term *= zr;
    for (int i = 0; i < e[1]; ++i) term *= zb;
    acc += term;
  }
  return acc.to_complex() * std::sqrt(to_double(f.scale_sq));
}

std::vector<cd> sample_points(int count, double radius, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<cd> out;
  out.reserve(count);
  // raw 53-bit draws keep the samples identical across standard libraries
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  while (static_cast<int>(out.size()) < count) {
    const cd z(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
    if (std::abs(z) <= 1.0) out.push_back(radius * z);
  }
  return out;
}

// ---------------------------------------------------------------- laguerre

std::vector<CheckResult> suite_laguerre(const VerifyOptions& opt) {
  Recorder r("laguerre");
  const int max_deg = opt.quick ? 6 : 12;
  const int max_alpha = opt.quick ? 4 : 8;

  r.guarded("orthogonality", [&] {
    double worst = 0.0;
    for (int alpha = 0; alpha <= max_alpha; ++alpha) {
      const QuadratureRule& rule = gauss_laguerre(alpha, 32);
      for (int n = 0; n <= max_deg; ++n) {
        for (int m = 0; m <= n; ++m) {
          const double value =
              integrate_halfline([&](double t) { return cd(laguerre_eval({n, alpha}, t) *
                                                            laguerre_eval({m, alpha}, t)); },
                                 rule)
                  .real();
          const double hn = std::exp(log_factorial(n + alpha) - log_factorial(n));
          const double hm = std::exp(log_factorial(m + alpha) - log_factorial(m));
          const double expected = n == m ? hn : 0.0;
          worst = std::max(worst, std::abs(value - expected) / std::sqrt(hn * hm));
        }
      }
    }
    r.check("orthogonality", worst, 1e-10);
  });

  r.guarded("normalization", [&] {
    double worst = 0.0;
    for (int alpha = 0; alpha <= max_alpha; ++alpha) {
      for (int m = 0; m <= max_deg; ++m) {
        const QuadratureRule rule = lebesgue_rule({}, kDefaultPanelNodes, alpha + 2.0 * m + 1.0);
        const double value = integrate_halfline(
                                 [&](double t) {
                                   const double l = laguerre_function(m, alpha, t);
                                   return cd(l * l);
                                 },
                                 rule)
                                 .real();
        worst = std::max(worst, std::abs(value - 1.0));
      }
    }
    r.check("normalization", worst, 1e-10);
  });

  r.guarded("recurrence_vs_explicit", [&] {
    double worst = 0.0;
    const int top = opt.quick ? 15 : 30;
    for (int alpha = 0; alpha <= 10; ++alpha) {
      for (int n = 0; n <= top; ++n) {
        const auto coeffs = laguerre_exact({n, alpha});
        for (double x : {0.1, 1.0, 10.0, 50.0}) {
          const Rational xr(x);
          Rational acc(0);
          Rational power(1);
          for (const auto& c : coeffs) {
            acc += c * power;
            power *= xr;
          }
          const double exact = to_double(acc);
          worst = std::max(worst, rel(laguerre_eval({n, alpha}, x), exact));
        }
      }
    }
    r.check("recurrence_vs_explicit", worst, 1e-12);
  });

  r.guarded("rodrigues", [&] {
    bool all = true;
    for (int n = 0; n <= 5; ++n) {
      for (int alpha = 0; alpha <= 5; ++alpha) all = all && rodrigues_identity_holds(n, alpha);
    }
    r.require("rodrigues", all);
  });

  r.guarded("sup_decay", [&] {
    bool ok = true;
    double worst_120 = 0.0;
    for (int m = 0; m <= 3; ++m) {
      for (double x : {1.0, 4.0}) {
        const double s40 = laguerre_function_sup(m, 40, x);
        const double s80 = laguerre_function_sup(m, 80, x);
        const double s120 = laguerre_function_sup(m, 120, x);
        ok = ok && s80 < s40 && s120 < s80;
        ok = ok && std::log(s120) <= log_laguerre_function_sup_bound(m, 120, x);
        worst_120 = std::max(worst_120, s120);
      }
    }
    r.require("sup_decay_monotone", ok);
    r.check("sup_at_alpha_120", worst_120, 1e-4);
  });

  r.guarded("gauss_laguerre_moments", [&] {
    double worst = 0.0;
    for (int alpha = 0; alpha <= max_alpha; ++alpha) {
      const QuadratureRule& rule = gauss_laguerre(alpha, 16);
      for (int k = 0; k <= 10; ++k) {
        const double value = integrate_halfline([&](double t) { return cd(std::pow(t, k)); }, rule).real();
        worst = std::max(worst, rel(value, std::exp(log_factorial(k + alpha))));
      }
    }
    r.check("gauss_laguerre_moments", worst, 1e-10);
  });
  return r.take();
}

// ---------------------------------------------------------------- basis

std::vector<CheckResult> suite_basis(const VerifyOptions& opt) {
  Recorder r("basis");
  const int cap = opt.quick ? 6 : 12;
  const int ortho_cap = opt.quick ? 4 : 8;

  r.guarded("exact_equivalence", [&] {
    bool all = true;
    for (int p = 0; p <= cap; ++p) {
      for (int q = 0; q <= cap; ++q) {
        ScaledPolynomial closed = b_coeffs({p, q});
        if (opt.corrupt_basis && p == 3 && q == 1) {
          closed.body.add_term({3, 1}, ComplexRational(Rational(1, 7)));
        }
        all = all && equivalent(b_exact({p, q}), closed);
      }
    }
    r.require("exact_equivalence", all);
  });

  r.guarded("exact_orthonormality", [&] {
    std::vector<ScaledPolynomial> basis;
    std::vector<HermiteIndex> indices;
    for (int p = 0; p <= ortho_cap; ++p) {
      for (int q = 0; q <= ortho_cap; ++q) {
        basis.push_back(b_coeffs({p, q}));
        indices.push_back({p, q});
      }
    }
    bool all = true;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const ScaledValue v = gaussian_inner(basis[i], basis[j]);
        all = all && v.squared_magnitude() == Rational(i == j ? 1 : 0);
        if (i == j) all = all && v.value.im == 0 && v.value.re > 0;
      }
    }
    r.require("exact_orthonormality", all);
  });

  r.guarded("monomial_b_inner", [&] {
    bool all = true;
    for (int q = 0; q <= ortho_cap; ++q) {
      for (int k = 0; k <= q; ++k) {
        for (int d = -k; d <= ortho_cap; ++d) {
          const SignedSqrt v = monomial_b_inner(d, k, q);
          if (k == q) {
            all = all && v.sign == 1 && v.square == Rational(factorial(q) * factorial(d + q));
          } else {
            all = all && v.sign == 0 && v.square == 0;
          }
        }
      }
    }
    r.require("monomial_b_inner", all);
  });

  r.guarded("float_vs_exact", [&] {
    const int top = opt.quick ? 8 : 16;
    const auto points = sample_points(opt.quick ? 3 : 6, 6.0, 11);
    double worst = 0.0;
    for (int p = 0; p <= top; ++p) {
      for (int q = 0; q <= top; ++q) {
        const ScaledPolynomial f = b_coeffs({p, q}, top);
        for (const auto& z : points) {
          const double scale = std::exp(0.5 * std::norm(z));
          worst = std::max(worst, std::abs(b_eval({p, q}, z) - exact_evaluate(f, z)) / scale);
        }
      }
    }
    r.check("float_vs_exact", worst, 1e-10);
  });

  r.guarded("rotation_eigenrelation", [&] {
    const auto points = sample_points(8, 3.0, 12);
    const std::vector<cd> taus{std::polar(1.0, 1.0), std::polar(1.0, std::sqrt(2.0)), cd(0.0, 1.0)};
    double worst = 0.0;
    for (int p = 0; p <= cap; ++p) {
      for (int q = 0; q <= cap; ++q) {
        for (const auto& tau : taus) {
          for (const auto& z : points) {
            const cd lhs = b_eval({p, q}, z / tau);
            const cd rhs = std::pow(tau, q - p) * b_eval({p, q}, z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::exp(0.5 * std::norm(z)));
          }
        }
      }
    }
    r.check("rotation_eigenrelation", worst, 1e-12);
  });

  r.guarded("polar_factorization", [&] {
    std::mt19937_64 rng(13);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    double worst = 0.0;
    for (int m = 1; m <= 4; ++m) {
      for (int d = -3; d <= 3; ++d) {
        const auto indices = truncated_diagonal({d, m, std::nullopt});
        std::vector<cd> coeffs;
        for (std::size_t i = 0; i < indices.size(); ++i) coeffs.emplace_back(unit(), unit());
        const cd tau = std::polar(1.0, 0.7);
        const int points = m + 2;
        Eigen::MatrixXcd vander(points, m);
        Eigen::VectorXcd values(points);
        for (int i = 0; i < points; ++i) {
          const double radius = 0.4 + 0.3 * i;
          cd f{0.0, 0.0};
          for (std::size_t k = 0; k < indices.size(); ++k) {
            f += coeffs[k] * b_eval(indices[k], radius * tau);
          }
          values(i) = f * std::pow(tau, -d) / std::pow(radius, std::abs(d));
          for (int c = 0; c < m; ++c) vander(i, c) = std::pow(radius * radius, c);
        }
        const Eigen::VectorXcd fit = vander.colPivHouseholderQr().solve(values);
        worst = std::max(worst, (vander * fit - values).norm() / std::max(1.0, values.norm()));
      }
    }
    r.check("polar_factorization", worst, 1e-10);
  });

  r.guarded("plane_vs_exact_monomials", [&] {
    const int top = opt.quick ? 6 : 10;
    const QuadratureRule& radial = gauss_laguerre(0, kDefaultRadialNodes);
    const CircleRule circle{kDefaultAngles};
    double worst = 0.0;
    for (int p = 0; p <= top; ++p) {
      for (int q = 0; q <= top; ++q) {
        for (int j = 0; j <= top; ++j) {
          for (int k = 0; k <= top; ++k) {
            const cd numeric = plane_inner(
                [p, q](cd z) { return std::pow(z, p) * std::pow(std::conj(z), q); },
                [j, k](cd z) { return std::pow(z, j) * std::pow(std::conj(z), k); }, radial,
                circle);
            const double exact = to_double(Rational(monomial_inner(p, q, j, k)));
            const double scale = std::sqrt(std::exp(log_factorial(p + q) + log_factorial(j + k)));
            worst = std::max(worst, std::abs(numeric - exact) / scale);
          }
        }
      }
    }
    r.check("plane_vs_exact_monomials", worst, 1e-10);
  });

  r.guarded("plane_orthonormality", [&] {
    const int top = opt.quick ? 6 : 12;
    const PlaneSamples samples =
        plane_samples(gauss_laguerre(0, kDefaultRadialNodes), CircleRule{kDefaultAngles});
    std::vector<HermiteIndex> indices;
    for (int p = 0; p <= top; ++p) {
      for (int q = 0; q <= top; ++q) indices.push_back({p, q});
    }
    const auto rows = static_cast<Eigen::Index>(samples.points.size());
    Eigen::MatrixXcd values(rows, static_cast<Eigen::Index>(indices.size()));
    for (Eigen::Index s = 0; s < rows; ++s) {
      const double w = std::sqrt(samples.weights[static_cast<std::size_t>(s)]);
      for (std::size_t i = 0; i < indices.size(); ++i) {
        values(s, static_cast<Eigen::Index>(i)) = w * b_eval(indices[i], samples.points[s]);
      }
    }
    const Eigen::MatrixXcd gram = values.adjoint() * values;
    const double residual =
        (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    r.check("plane_orthonormality", residual, 1e-10);
  });
  return r.take();
}

// ---------------------------------------------------------------- kernels

std::vector<CheckResult> suite_kernels(const VerifyOptions& opt) {
  Recorder r("kernels");
  const auto zs = sample_points(opt.quick ? 5 : 20, 2.0, 21);
  const auto ws = sample_points(opt.quick ? 5 : 20, 2.0, 22);

  r.guarded("partial_sums", [&] {
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
      for (SpaceKind kind : {SpaceKind::poly, SpaceKind::true_poly}) {
        for (std::size_t i = 0; i < zs.size(); ++i) {
          const SpaceId space{kind, n};
          const cd closed = kernel(space, zs[i], ws[i]);
          const cd series = kernel_partial_sum(space, zs[i], ws[i], 200);
          worst = std::max(worst, std::abs(series - closed) / std::max(1.0, std::abs(closed)));
        }
      }
    }
    r.check("partial_sums_P200", worst, 1e-8);
  });

  r.guarded("recursion", [&] {
    bool all = true;
    for (int n = 1; n <= (opt.quick ? 3 : 5); ++n) all = all && kernel_recursion_check(n);
    r.require("recursion_symbolic", all);
  });

  r.guarded("symmetries", [&] {
    double rotation = 0.0;
    double hermitian = 0.0;
    double telescoping = 0.0;
    const std::vector<cd> taus{cd(0.0, 1.0), std::polar(1.0, 1.0), std::polar(1.0, std::sqrt(2.0))};
    for (int n = 1; n <= 4; ++n) {
      for (std::size_t i = 0; i < zs.size(); ++i) {
        const cd z = zs[i];
        const cd w = ws[i];
        for (SpaceKind kind : {SpaceKind::poly, SpaceKind::true_poly}) {
          const SpaceId space{kind, n};
          const cd k = kernel(space, z, w);
          const double scale = std::max(1.0, std::abs(k));
          for (const auto& tau : taus) {
            rotation = std::max(rotation, std::abs(kernel(space, tau * z, tau * w) - k) / scale);
          }
          hermitian = std::max(hermitian, std::abs(kernel(space, w, z) - std::conj(k)) / scale);
        }
        cd sum{0.0, 0.0};
        for (int m = 1; m <= n; ++m) sum += kernel_true(m, z, w);
        const cd poly = kernel_poly(n, z, w);
        telescoping = std::max(telescoping, std::abs(sum - poly) / std::max(1.0, std::abs(poly)));
      }
    }
    r.check("rotation_invariance", rotation, 1e-12);
    r.check("hermitian_symmetry", hermitian, 1e-12);
    r.check("telescoping", telescoping, 1e-12);
  });

  r.guarded("evaluation_bound", [&] {
    double diag = 0.0;
    double witness = 0.0;
    for (int n = 1; n <= 4; ++n) {
      for (const auto& z : zs) {
        const double expected = n * std::exp(std::norm(z));
        const cd k = kernel_poly(n, z, z);
        diag = std::max(diag, std::abs(k - expected) / expected);
        // |K_z(z)| / ||K_z|| with ||K_z||^2 = K_z(z)
        witness = std::max(witness, rel(std::abs(k) / std::sqrt(k.real()), evaluation_bound(n, z)));
      }
    }
    r.check("kernel_diagonal", diag, 1e-12);
    r.check("bound_equality", witness, 1e-10);
  });

  r.guarded("reproducing", [&] {
    // <b_idx, K_z> by the truncated series equals b_idx(z)
    double worst = 0.0;
    const auto points = sample_points(4, 3.0, 23);
    for (int n = 1; n <= 3; ++n) {
      const SpaceId space{SpaceKind::poly, n};
      for (const auto& z : points) {
        const FockVector kz = kernel_vector(space, z, 200);
        for (int p = 0; p <= 6; ++p) {
          for (int q = 0; q < n; ++q) {
            const cd inner = std::conj(kz.coefficients.at({p, q}));
            worst = std::max(worst, std::abs(inner - b_eval({p, q}, z)) / std::exp(0.5 * std::norm(z)));
          }
        }
        const double tail = std::abs(kz.norm() * kz.norm() - kernel_poly(n, z, z).real()) /
                            kernel_poly(n, z, z).real();
        worst = std::max(worst, tail);
      }
    }
    r.check("reproducing_property", worst, 1e-8);
  });

  r.guarded("englis", [&] {
    const BasisMatrix s = englis_operator(2, 30);
    const auto b00 = *basis_position(s.space, s.truncation, {0, 0});
    const auto b10 = *basis_position(s.space, s.truncation, {1, 0});
    r.require("englis_nonzero", s.entries(static_cast<Eigen::Index>(b10),
                                          static_cast<Eigen::Index>(b00)) == cd(1.0, 0.0));
    double worst = 0.0;
    for (const auto& z : sample_points(10, 2.0, 24)) worst = std::max(worst, std::abs(berezin(s, z).value));
    r.check("englis_berezin_zero", worst, 1e-8);
  });

  r.guarded("creation_isometry", [&] {
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
      FockVector v{{SpaceKind::true_poly, n}, 10, {}};
      v.coefficients[{0, n - 1}] = 1.0 / std::sqrt(2.0);
      v.coefficients[{5, n - 1}] = 1.0 / std::sqrt(2.0);
      const FockVector out = creation_apply(n, v);
      worst = std::max(worst, std::abs(out.norm() - v.norm()));
      worst = std::max(worst, std::abs(out.coefficients.at({5, n}) - v.coefficients.at({5, n - 1})));
    }
    r.check("creation_isometry", worst, 0.0);
  });
  return r.take();
}

// ---------------------------------------------------------------- radial

std::vector<CheckResult> suite_radial(const VerifyOptions& opt) {
  Recorder r("radial");
  const int truncation = opt.quick ? 20 : 40;
  const int max_n = opt.quick ? 2 : 3;

  r.guarded("toeplitz_structure", [&] {
    double off_block = 0.0;
    double round_trip = 0.0;
    bool exact_inverse = true;
    bool sizes = true;
    for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_exp_decay()}) {
      for (int n = 1; n <= max_n; ++n) {
        const BasisMatrix s = toeplitz_matrix(a, {SpaceKind::poly, n}, truncation);
        off_block = std::max(off_block, off_block_mass(s));
        const int d_max = max_covered_diagonal(n, truncation);
        const RadialOperatorRep rep = phi_n(s, d_max, 1e-8);
        for (int d = rep.d_min; d <= rep.d_max(); ++d) {
          sizes = sizes && rep.block(d).rows() == std::min(n, n + d);
        }
        const BasisMatrix back = assemble_blocks(rep, truncation);
        const RadialOperatorRep again = phi_n(back, d_max);
        for (int d = rep.d_min; d <= rep.d_max(); ++d) {
          exact_inverse = exact_inverse && again.block(d) == rep.block(d);
        }
        // every entry on a fully covered diagonal is reproduced
        const auto indices = basis_indices(s.space, truncation);
        for (std::size_t i = 0; i < indices.size(); ++i) {
          for (std::size_t j = 0; j < indices.size(); ++j) {
            if (indices[i].d() > d_max || indices[j].d() > d_max) continue;
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            round_trip = std::max(round_trip, std::abs(back.entries(jj, ii) - s.entries(jj, ii)));
          }
        }
      }
    }
    r.check("toeplitz_off_block_mass", off_block, 1e-8);
    r.require("block_sizes", sizes);
    r.require("phi_assemble_exact_inverse", exact_inverse);
    r.check("assemble_phi_round_trip", round_trip, 1e-8);
  });

  r.guarded("radialization", [&] {
    std::mt19937_64 rng(31);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    const SpaceId space{SpaceKind::poly, 3};
    const int p = 8;
    BasisMatrix s = identity_matrix(space, p);
    for (Eigen::Index j = 0; j < s.entries.rows(); ++j) {
      for (Eigen::Index i = 0; i < s.entries.cols(); ++i) s.entries(j, i) = cd(unit(), unit());
    }
    const BasisMatrix rad = radialize_matrix(s);
    r.require("radialize_idempotent", radialize_matrix(rad).entries == rad.entries);
    r.require("radialize_norm_nonincreasing",
              spectral_norm(rad.entries) <= spectral_norm(s.entries) * (1.0 + 1e-12));
    r.require("radial_iff_fixed_point",
              is_radial(rad).radial && !is_radial(s).radial && radialize_matrix(rad).entries == rad.entries &&
                  radialize_matrix(s).entries != s.entries);
    int max_abs_d = 0;
    for (const auto& idx : basis_indices(space, p)) max_abs_d = std::max(max_abs_d, std::abs(idx.d()));
    const BasisMatrix numeric = radialize_numeric(s, CircleRule{2 * max_abs_d + 1});
    r.check("radialize_numeric_agrees", (numeric.entries - rad.entries).cwiseAbs().maxCoeff(), 1e-12);
    const BasisMatrix aliased = radialize_numeric(s, CircleRule{max_abs_d});
    r.require("radialize_numeric_aliasing_detected",
              (aliased.entries - rad.entries).cwiseAbs().maxCoeff() > 1e-3);
  });

  r.guarded("englis", [&] {
    const BasisMatrix s = englis_operator(2, 20);
    const RadialityReport report = is_radial(s);
    r.require("englis_not_radial", !report.radial);
    r.check("englis_commutator_at_i",
            std::max(0.0, std::abs(cd(0.0, -1.0) - 1.0) - report.max_commutator_norm), 1e-12);
    r.check("englis_radialization_zero", radialize_matrix(s).entries.cwiseAbs().maxCoeff(), 0.0);
    double worst = 0.0;
    for (const auto& z : sample_points(10, 2.0, 32)) worst = std::max(worst, std::abs(berezin(s, z).value));
    r.check("englis_berezin_zero", worst, 1e-8);
  });

  r.guarded("multiplicativity", [&] {
    std::mt19937_64 rng(33);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    const int n = 3;
    const int p = 12;
    const int d_max = max_covered_diagonal(n, p);
    auto random_rep = [&] {
      RadialOperatorRep rep{n, 1 - n, p, {}};
      for (int d = 1 - n; d <= d_max; ++d) {
        const int size = block_size(n, d);
        Eigen::MatrixXcd a(size, size);
        for (int i = 0; i < size; ++i) {
          for (int j = 0; j < size; ++j) a(i, j) = cd(unit(), unit());
        }
        rep.blocks.push_back(a);
      }
      return rep;
    };
    const RadialOperatorRep ra = random_rep();
    const RadialOperatorRep rb = random_rep();
    const BasisMatrix sa = assemble_blocks(ra, p);
    const BasisMatrix sb = assemble_blocks(rb, p);
    BasisMatrix product = sa;
    product.entries = sa.entries * sb.entries;
    const RadialOperatorRep rp = phi_n(product, d_max);
    double worst = 0.0;
    double norm_gap = 0.0;
    for (int d = 1 - n; d <= d_max; ++d) {
      worst = std::max(worst, (rp.block(d) - ra.block(d) * rb.block(d)).cwiseAbs().maxCoeff());
    }
    double block_max = 0.0;
    for (const auto& b : ra.blocks) block_max = std::max(block_max, spectral_norm(b));
    norm_gap = std::abs(spectral_norm(sa.entries) - block_max) / block_max;
    r.check("phi_multiplicative", worst, 1e-12);
    r.check("assemble_norm_is_block_sup", norm_gap, 1e-12);
  });

  r.guarded("covariance", [&] {
    const SpaceId space{SpaceKind::poly, 2};
    const int p = 15;
    const cd tau(0.0, 1.0);
    const BasisMatrix tg = toeplitz_matrix([](cd z) { return cd(z.real(), 0.0); }, space, p);
    const BasisMatrix rotated =
        toeplitz_matrix([tau](cd z) { return cd((tau * z).real(), 0.0); }, space, p);
    const Eigen::VectorXcd rd = rotation_diagonal(space, p, tau);
    const Eigen::MatrixXcd expected = rd.conjugate().asDiagonal() * tg.entries * rd.asDiagonal();
    r.check("toeplitz_covariance", (rotated.entries - expected).cwiseAbs().maxCoeff(), 1e-10);
    r.require("re_z_not_radial", !is_radial(tg).radial);
  });

  r.guarded("berezin_radial_invariance", [&] {
    const BasisMatrix s = toeplitz_matrix(symbol_exp_decay(), {SpaceKind::poly, 2}, 60);
    double worst = 0.0;
    for (const auto& z : sample_points(5, 1.5, 34)) {
      const cd base = berezin(s, z).value;
      for (const cd tau : {cd(0.0, 1.0), std::polar(1.0, 1.0)}) {
        worst = std::max(worst, std::abs(berezin(s, tau * z).value - base));
      }
    }
    r.check("berezin_radial_invariance", worst, 1e-8);
  });

  r.guarded("finite_rank", [&] {
    std::mt19937_64 rng(35);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    const int n = 3;
    const int p = 10;
    std::vector<FiniteRankTerm> terms;
    for (int d = -2; d <= 4; ++d) {
      FiniteRankTerm t;
      t.d = d;
      t.xi = cd(1.0 + unit(), unit());
      for (const auto& idx : truncated_diagonal({d, std::min(n, n + d), n})) {
        t.u.emplace_back(idx, cd(unit(), unit()));
        t.v.emplace_back(idx, cd(unit(), unit()));
      }
      terms.push_back(t);
    }
    r.require("finite_rank_is_radial", is_radial(finite_rank_radial(n, p, terms)).radial);
    FiniteRankTerm bad;
    bad.d = 0;
    bad.u = {{{0, 0}, 1.0}};
    bad.v = {{{1, 0}, 1.0}};
    bool rejected = false;
    try {
      (void)finite_rank_radial(n, p, {bad});
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    r.require("finite_rank_mixed_diagonals_rejected", rejected);
  });
  return r.take();
}

// ---------------------------------------------------------------- toeplitz

std::vector<CheckResult> suite_toeplitz(const VerifyOptions& opt) {
  Recorder r("toeplitz");
  const int truncation = opt.quick ? 20 : 40;
  const int max_n = opt.quick ? 2 : 4;

  r.guarded("diagonality", [&] {
    double off = 0.0;
    double cross = 0.0;
    for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_exp_decay(), symbol_rational()}) {
      for (int n = 1; n <= max_n; ++n) {
        const BasisMatrix s = toeplitz_matrix(a, {SpaceKind::true_poly, n}, truncation);
        off = std::max(off, off_diagonal_mass(s.entries));
        const EigenvalueSequence lambda = lambda_seq(a, n, truncation);
        for (int p = 0; p <= truncation; ++p) {
          cross = std::max(cross, std::abs(lambda.values[static_cast<std::size_t>(p)] - s.entries(p, p)));
        }
      }
    }
    r.check("true_poly_off_diagonal_mass", off, 1e-8);
    r.check("lambda_vs_matrix_diagonal", cross, 1e-8);
  });

  r.guarded("incomplete_gamma", [&] {
    double worst = 0.0;
    for (double u : {0.5, 1.0, 2.0}) {
      const EigenvalueSequence lambda = lambda_seq(symbol_indicator(u), 1, 30);
      for (int p = 0; p <= 30; ++p) {
        const double oracle = boost::math::gamma_p(p + 1.0, u * u);
        worst = std::max(worst, std::abs(lambda.values[static_cast<std::size_t>(p)].real() - oracle));
      }
    }
    r.check("lambda_incomplete_gamma", worst, 1e-9);
  });

  r.guarded("limit_lemma", [&] {
    double at_200 = 0.0;
    bool decreasing = true;
    for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_constant(1.0)}) {
      for (int j = 0; j <= 2; ++j) {
        for (int k = 0; k <= 2; ++k) {
          const auto rows = limit_diagnostic(a, j, k, {10, 200});
          at_200 = std::max(at_200, rows[1].residual);
          // residuals at rounding level count as already converged
          decreasing = decreasing && (rows[1].residual < rows[0].residual ||
                                      std::max(rows[0].residual, rows[1].residual) < 1e-12);
        }
      }
    }
    r.check("limit_residual_d200", at_200, 1e-5);
    r.require("limit_residual_decreasing", decreasing);
  });

  r.guarded("block_limit", [&] {
    bool decreasing = true;
    for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_inverse_linear(), symbol_exp_decay()}) {
      double previous = std::numeric_limits<double>::infinity();
      for (int d : {10, 50, 200}) {
        const Eigen::MatrixXcd block = toeplitz_block(a, 2, d);
        const double gap =
            spectral_norm(block - *a.limit_at_infinity * Eigen::MatrixXcd::Identity(2, 2));
        decreasing = decreasing && gap < previous;
        previous = gap;
      }
    }
    r.require("block_limit_decreasing", decreasing);
  });

  r.guarded("contractivity", [&] {
    double excess = 0.0;
    double convergence = 0.0;
    const int p_max = opt.quick ? 60 : 200;
    for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_gauss(1.0), symbol_constant(0.5)}) {
      for (int n = 1; n <= 3; ++n) {
        const EigenvalueSequence lambda = lambda_seq(a, n, p_max);
        for (const auto& v : lambda.values) excess = std::max(excess, std::abs(v) - a.bound);
        convergence = std::max(convergence, std::abs(lambda.values.back() - *a.limit_at_infinity));
      }
    }
    r.check("contractivity", std::max(0.0, excess), 1e-12);
    r.check("lambda_tail_near_limit", convergence, 1e-4);
  });

  r.guarded("separation", [&] {
    const SeparationResult first = separation_check(1, 0, 1, {1.0});
    r.check("separation_gap_n1", std::abs(first.max_gap - std::exp(-1.0)), 1e-9);
    const SeparationResult second = separation_check(2, 0, 5, {0.5, 1.0, 2.0, 4.0});
    r.require("separation_witness_n2", second.separated);
    r.require("separation_infinity", separation_check(3, 7, std::nullopt, {}).separated);
  });
  return r.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"laguerre", "basis", "kernels", "radial", "toeplitz"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  if (suite == "laguerre") return suite_laguerre(options);
  if (suite == "basis") return suite_basis(options);
  if (suite == "kernels") return suite_kernels(options);
  if (suite == "radial") return suite_radial(options);
  if (suite == "toeplitz") return suite_toeplitz(options);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

void print_table(std::ostream& out, const std::vector<CheckResult>& results) {
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-38s %-12s %-12s %s\n", "suite", "check", "residual",
                "tolerance", "status");
  out << line;
  int failed = 0;
  for (const auto& c : results) {
    std::snprintf(line, sizeof line, "%-10s %-38s %-12.3e %-12.3e %s\n", c.suite.c_str(),
                  c.name.c_str(), c.residual, c.tolerance, c.pass ? "PASS" : "FAIL");
    out << line;
    if (!c.pass) ++failed;
  }
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed\n"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) +
                            " checks failed\n");
}

}  // namespace polyfock::cli
