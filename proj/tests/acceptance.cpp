// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <sys/wait.h>

#include <polyfock/fock_spaces.hpp>
#include <polyfock/hermite_basis.hpp>
#include <polyfock/laguerre.hpp>
#include <polyfock/quadrature.hpp>
#include <polyfock/radial_ops.hpp>
#include <polyfock/toeplitz.hpp>

namespace {

using namespace polyfock;
using cd = std::complex<double>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::vector<cd> disc_samples(int count, double radius, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cd> out;
  while (static_cast<int>(out.size()) < count) {
    const cd z(u(gen), u(gen));
    if (std::abs(z) <= radius) out.push_back(z);
  }
  return out;
}

// ---------------------------------------------------------------- 1

Outcome exact_basis_equivalence() {
  Outcome o;
  int mismatches = 0;
  for (int p = 0; p <= 12; ++p) {
    for (int q = 0; q <= 12; ++q) {
      if (!equivalent(b_exact({p, q}), b_coeffs({p, q}))) ++mismatches;
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " of 169 pairs differ");
  o.detail = o.pass ? "169 pairs identical" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 2

Outcome exact_orthonormality() {
  Outcome o;
  std::vector<ScaledPolynomial> basis;
  for (int p = 0; p <= 8; ++p) {
    for (int q = 0; q <= 8; ++q) basis.push_back(b_coeffs({p, q}));
  }
  int bad = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      if (gaussian_inner(basis[i], basis[j]).squared_magnitude() != (i == j ? 1 : 0)) ++bad;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " Gram entries wrong");
  int closed = 0;
  for (int d = -8; d <= 8; ++d) {
    for (int q = std::max(0, -d); q + std::max(d, 0) <= 8; ++q) {
      for (int k = std::max(0, -d); k <= q; ++k) {
        const SignedSqrt v = monomial_b_inner(d, k, q);
        const bool ok = k < q ? v.sign == 0
                              : v.sign == 1 && v.square == Rational(factorial(q) * factorial(d + q));
        if (!ok) ++closed;
      }
    }
  }
  o.require(closed == 0, std::to_string(closed) + " monomial products wrong");
  if (o.pass) o.detail = "81x81 Gram exact, monomial products exact";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome laguerre_layer() {
  Outcome o;
  double worst = 0.0;
  for (int alpha = 0; alpha <= 8; ++alpha) {
    const QuadratureRule& rule = gauss_laguerre(alpha, 32);
    for (int n = 0; n <= 12; ++n) {
      for (int m = 0; m <= 12; ++m) {
        const cd v = integrate_halfline(
            [=](double x) { return laguerre_eval({n, alpha}, x) * laguerre_eval({m, alpha}, x); },
            rule);
        const double norm = std::exp(log_factorial(n + alpha) - log_factorial(n));
        worst = std::max(worst, std::abs(v - (n == m ? norm : 0.0)) / norm);
      }
    }
  }
  o.require(worst <= 1e-10, "orthogonality residual " + sci(worst));
  for (int n = 0; n <= 5; ++n) {
    for (int alpha = 0; alpha <= 5; ++alpha) {
      o.require(rodrigues_identity_holds(n, alpha),
                "Rodrigues fails at n=" + std::to_string(n) + " alpha=" + std::to_string(alpha));
    }
  }
  if (o.pass) o.detail = "orthogonality rel " + sci(worst) + ", Rodrigues exact";
  return o;
}

// ---------------------------------------------------------------- 4

Outcome kernel_suite() {
  Outcome o;
  const auto zs = disc_samples(20, 2.0, 41);
  const auto ws = disc_samples(20, 2.0, 42);
  double series = 0.0;
  double rotation = 0.0;
  double diagonal = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto kind : {SpaceKind::poly, SpaceKind::true_poly}) {
      const SpaceId s{kind, n};
      for (std::size_t i = 0; i < zs.size(); ++i) {
        const cd k = kernel(s, zs[i], ws[i]);
        series = std::max(series, std::abs(kernel_partial_sum(s, zs[i], ws[i], 200) - k));
        const cd tau = std::polar(1.0, 0.3 + i);
        rotation = std::max(rotation, std::abs(kernel(s, tau * zs[i], tau * ws[i]) - k) /
                                          std::max(1.0, std::abs(k)));
      }
    }
    for (const cd z : zs) {
      const double expected = n * std::exp(std::norm(z));
      diagonal =
          std::max(diagonal, std::abs(kernel_poly(n, z, z) - expected) / expected);
      const FockVector kz = kernel_vector({SpaceKind::poly, n}, z, 200);
      const double bound = evaluation_bound(n, z);
      diagonal = std::max(diagonal, std::abs(std::abs(kz.evaluate(z)) / kz.norm() - bound) / bound);
    }
  }
  o.require(series <= 1e-8, "partial sums " + sci(series));
  o.require(rotation <= 1e-12, "rotation invariance " + sci(rotation));
  o.require(diagonal <= 1e-12, "evaluation bound " + sci(diagonal));
  for (int n = 1; n <= 5; ++n) {
    o.require(kernel_recursion_check(n), "recursion fails at n=" + std::to_string(n));
  }
  if (o.pass) {
    o.detail = "series " + sci(series) + ", rotation " + sci(rotation) + ", bound " +
               sci(diagonal) + ", recursion exact";
  }
  return o;
}

// ---------------------------------------------------------------- 5

Outcome radial_structure() {
  Outcome o;
  const int truncation = 40;
  double mass = 0.0;
  for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_exp_decay()}) {
    for (int n = 1; n <= 3; ++n) {
      const SpaceId s{SpaceKind::poly, n};
      const BasisMatrix t = toeplitz_matrix(a, s, truncation);
      mass = std::max(mass, off_block_mass(t));
      // Round trip on the radialized matrix, which is exactly block-structured.
      const BasisMatrix r = radialize_matrix(t);
      const int d_max = max_covered_diagonal(n, truncation);
      const RadialOperatorRep rep = phi_n(r, d_max, 1e-8);
      for (int d = 1 - n; d <= d_max; ++d) {
        if (rep.block(d).rows() != block_size(n, d)) {
          o.require(false, "block size at d=" + std::to_string(d));
        }
      }
      o.require(d_max < 1 || block_size(n, 1 - n) == 1, "first block order");
      const BasisMatrix back = assemble_blocks(rep, truncation);
      const auto idx = basis_indices(s, truncation);
      bool exact = true;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
          if (idx[i].d() <= d_max && idx[j].d() <= d_max && back.entries(j, i) != r.entries(j, i)) {
            exact = false;
          }
        }
      }
      o.require(exact && phi_n(back, d_max).blocks == rep.blocks,
                a.name + " n=" + std::to_string(n) + " round trip not exact");
      o.require(is_radial(r).radial && radialize_matrix(r).entries == r.entries,
                "radialize fixed point");
    }
  }
  o.require(mass < 1e-8, "off-block mass " + sci(mass));
  double berezin_max = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const BasisMatrix e = englis_operator(n, truncation);
    o.require(!is_radial(e).radial, "Englis operator reported radial");
    o.require(radialize_matrix(e).entries != e.entries, "Englis operator is a fixed point");
    for (const cd z : disc_samples(10, 2.0, 51)) {
      berezin_max = std::max(berezin_max, std::abs(berezin(e, z).value));
    }
  }
  o.require(berezin_max < 1e-8, "Englis Berezin " + sci(berezin_max));
  if (o.pass) {
    o.detail = "off-block mass " + sci(mass) + ", round trips exact, Englis Berezin " +
               sci(berezin_max);
  }
  return o;
}

// ---------------------------------------------------------------- 6

Outcome true_poly_diagonality() {
  Outcome o;
  double off = 0.0;
  double diag = 0.0;
  for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_exp_decay()}) {
    for (int n = 1; n <= 4; ++n) {
      const BasisMatrix t = toeplitz_matrix(a, {SpaceKind::true_poly, n}, 40);
      off = std::max(off, off_diagonal_mass(t.entries));
      const EigenvalueSequence lambda = lambda_seq(a, n, 40);
      for (int p = 0; p <= 40; ++p) diag = std::max(diag, std::abs(t.entries(p, p) - lambda.values[p]));
    }
  }
  double gamma = 0.0;
  for (const double u : {0.5, 1.0, 2.0}) {
    const EigenvalueSequence lambda = lambda_seq(symbol_indicator(u), 1, 30);
    for (int p = 0; p <= 30; ++p) {
      gamma = std::max(gamma,
                       std::abs(lambda.values[p].real() - boost::math::gamma_p(p + 1.0, u * u)));
    }
  }
  o.require(off < 1e-8, "off-diagonal mass " + sci(off));
  o.require(diag <= 1e-8, "lambda vs diagonal " + sci(diag));
  o.require(gamma <= 1e-9, "incomplete gamma " + sci(gamma));
  if (o.pass) {
    o.detail = "off-diagonal " + sci(off) + ", lambda/diag " + sci(diag) + ", gamma " + sci(gamma);
  }
  return o;
}

// ---------------------------------------------------------------- 7

Outcome limit_lemma() {
  Outcome o;
  double worst200 = 0.0;
  for (const RadialSymbol& a : {symbol_indicator(1.0), symbol_constant(1.0)}) {
    for (int j = 0; j <= 2; ++j) {
      for (int k = 0; k <= 2; ++k) {
        const auto rows = limit_diagnostic(a, j, k, {10, 200});
        worst200 = std::max(worst200, rows[1].residual);
        // Residuals at rounding level count as converged: a constant symbol
        // is exact for every d.
        const bool decreasing = rows[1].residual < rows[0].residual ||
                                (rows[0].residual < 1e-12 && rows[1].residual < 1e-12);
        o.require(decreasing, a.name + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                                  " residual did not decrease");
      }
    }
  }
  o.require(worst200 < 1e-5, "residual at d=200 " + sci(worst200));
  for (int m = 0; m <= 3; ++m) {
    for (const double x : {1.0, 4.0}) {
      const double s40 = laguerre_function_sup(m, 40, x);
      const double s80 = laguerre_function_sup(m, 80, x);
      const double s120 = laguerre_function_sup(m, 120, x);
      o.require(s80 < s40 && s120 < 1e-4, "Laguerre sup decay at m=" + std::to_string(m));
    }
  }
  if (o.pass) o.detail = "max residual at d=200 " + sci(worst200) + ", sup decay holds";
  return o;
}

// ---------------------------------------------------------------- 8

Outcome quadrature_vs_exact() {
  Outcome o;
  const QuadratureRule& radial = gauss_laguerre(0, 64);
  const CircleRule circle{64};
  const PlaneSamples samples = plane_samples(radial, circle);
  double worst = 0.0;
  // Relative to the exact value where it is nonzero, otherwise to the
  // product of the monomial norms.
  for (int p = 0; p <= 10; ++p) {
    for (int q = 0; q <= 10; ++q) {
      for (int j = 0; j <= 10; ++j) {
        for (int k = 0; k <= 10; ++k) {
          cd num = 0.0;
          for (std::size_t s = 0; s < samples.points.size(); ++s) {
            const cd z = samples.points[s];
            num += samples.weights[s] * std::pow(z, p) * std::pow(std::conj(z), q) *
                   std::conj(std::pow(z, j) * std::pow(std::conj(z), k));
          }
          const double exact = to_double(Rational(monomial_inner(p, q, j, k)));
          const double scale =
              exact != 0.0 ? exact
                           : std::sqrt(std::exp(log_factorial(p + q) + log_factorial(j + k)));
          worst = std::max(worst, std::abs(num - exact) / scale);
        }
      }
    }
  }
  o.require(worst <= 1e-10, "relative error " + sci(worst));
  if (o.pass) o.detail = "14641 monomial pairs, max rel " + sci(worst);
  return o;
}

// ---------------------------------------------------------------- 9

struct ProcessResult {
  int code = -1;
  std::string out;
};

ProcessResult run_process(const std::string& args) {
  const std::string cmd = std::string(POLYFOCK_CLI_PATH) + " " + args + " 2>/dev/null";
  ProcessResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_determinism() {
  Outcome o;
  struct Case {
    std::string args;
    int expected_code;
  };
  const std::vector<Case> cases{
      {"verify --suite all", 0},
      {"verify --suite laguerre --quick", 0},
      {"verify --suite basis --inject-corruption", 1},
      {"basis --p 1 --q 1 --eval 2+0i", 0},
      {"basis --p 0 --q 0 --coeffs", 0},
      {"basis --p 2 --q 2 --coeffs", 0},
      {"kernel --n 1 --kind poly --z 0 --w 0", 0},
      {"kernel --n 3 --kind poly --z 1 --w 1", 0},
      {"kernel --n 2 --kind true --z 0 --w 1", 0},
      {"toeplitz --n 2 --symbol const:1 --pmax 20", 0},
      {"toeplitz --n 1 --symbol indicator:1 --pmax 5", 0},
      {"toeplitz --n 2 --blocks --dmax 50 --symbol indicator:1", 0},
      {"basis --p -1 --q 0", 2},
      {"toeplitz --n 1 --symbol nosuch", 2},
  };
  for (const Case& c : cases) {
    const auto start = std::chrono::steady_clock::now();
    const ProcessResult a = run_process(c.args);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const ProcessResult b = run_process(c.args);
    o.require(a.out == b.out, "'" + c.args + "' output differs between runs");
    o.require(a.code == c.expected_code && b.code == c.expected_code,
              "'" + c.args + "' exit " + std::to_string(a.code) + "/" + std::to_string(b.code));
    if (c.args == "verify --suite all") o.require(seconds < 120.0, "verify all took " + sci(seconds) + " s");
    if (c.args == "verify --suite laguerre --quick") {
      o.require(seconds < 5.0, "quick laguerre took " + sci(seconds) + " s");
    }
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " commands byte-identical with documented exit codes";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact basis equivalence", 10.0, exact_basis_equivalence},
      {2, "exact orthonormality", 10.0, exact_orthonormality},
      {3, "laguerre layer", 5.0, laguerre_layer},
      {4, "kernel suite", 60.0, kernel_suite},
      {5, "radial structure", 120.0, radial_structure},
      {6, "true-poly diagonality", 60.0, true_poly_diagonality},
      {7, "limit lemma", 60.0, limit_lemma},
      {8, "quadrature vs exact", 10.0, quadrature_vs_exact},
      {9, "cli determinism", 600.0, cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= c.limit_seconds) {
      o.pass = false;
      o.detail += "; exceeded " + sci(c.limit_seconds) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d: %s  %-24s %7.2fs  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
