#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <polyfock/hermite_basis.hpp>
#include <polyfock/laguerre.hpp>

namespace polyfock {
namespace {

using cd = std::complex<double>;

// Gram-Schmidt oracle on one diagonal: orthonormalize m_{d+k,k}, k = 0..m,
// with the exact inner product and compare the last vector with b_{d+m,m}.
// Coefficients are compared up to the scale, which is irrational in general,
// through squared norms and the sign of the leading coefficient.
TEST(HermiteBasis, GramSchmidtOracle) {
  for (int d = -3; d <= 3; ++d) {
    const int start = std::max(0, -d);
    std::vector<BiPolynomial> ortho;  // orthogonal, not normalized
    for (int k = start; k < start + 5; ++k) {
      BiPolynomial v = monomial(d + k, k);
      for (const auto& u : ortho) {
        const ComplexRational c = gaussian_inner(v, u);
        const Rational nu = gaussian_inner(u, u).re;
        v -= u * ComplexRational(c.re / nu, c.im / nu);
      }
      ortho.push_back(v);
      // b = v / |v| must satisfy b_coeffs.body * sqrt(scale) = v / sqrt(<v,v>).
      const ScaledPolynomial b = b_coeffs({d + k, k});
      const Rational vv = gaussian_inner(v, v).re;
      // Ratio body / v is a constant c with c^2 scale_sq = 1 / <v, v>.
      const ComplexRational lead_v = v.coefficient({d + k, k});
      const ComplexRational lead_b = b.body.coefficient({d + k, k});
      const Rational ratio = lead_b.re / lead_v.re;
      EXPECT_EQ(b.body, v * ComplexRational(ratio)) << "d=" << d << " k=" << k;
      EXPECT_EQ(ratio * ratio * b.scale_sq, 1 / vv);
      EXPECT_GT(ratio, 0);
    }
  }
}

TEST(HermiteBasis, ExactExamples) {
  const ScaledPolynomial b01 = b_exact({0, 1});
  EXPECT_TRUE(equivalent(b01, {monomial(0, 1), 1}));
  EXPECT_TRUE(equivalent(b_exact({1, 1}), {monomial(1, 1) - monomial(0, 0), 1}));
  const BiPolynomial b22 = monomial(2, 2) - monomial(1, 1, 4) + monomial(0, 0, 2);
  EXPECT_TRUE(equivalent(b_exact({2, 2}), {b22, Rational(1, 4)}));
  EXPECT_TRUE(equivalent(b_coeffs({1, 0}), {monomial(1, 0), 1}));
  EXPECT_TRUE(equivalent(b_coeffs({1, 2}), {monomial(1, 2) - monomial(0, 1, 2), Rational(1, 2)}));
  EXPECT_TRUE(equivalent(b_coeffs({3, 1}), b_exact({3, 1})));
}

TEST(HermiteBasis, EquivalentDetectsScaleAndBody) {
  EXPECT_TRUE(equivalent({monomial(1, 0, 2), Rational(1, 4)}, {monomial(1, 0), 1}));
  EXPECT_FALSE(equivalent({monomial(1, 0), 2}, {monomial(1, 0), 1}));
  EXPECT_FALSE(equivalent({monomial(1, 0, -1), 1}, {monomial(1, 0), 1}));
}

TEST(HermiteBasis, IndexCapIsEnforced) {
  EXPECT_THROW(b_exact({33, 0}), std::invalid_argument);
  EXPECT_THROW(b_coeffs({0, 5}, 4), std::invalid_argument);
  EXPECT_THROW(b_exact({-1, 0}), std::invalid_argument);
}

TEST(HermiteBasis, ExactAndClosedFormAgree) {
  for (int p = 0; p <= 12; ++p) {
    for (int q = 0; q <= 12; ++q) {
      ASSERT_TRUE(equivalent(b_exact({p, q}), b_coeffs({p, q}))) << p << ' ' << q;
    }
  }
}

TEST(HermiteBasis, ExactOrthonormality) {
  std::vector<ScaledPolynomial> basis;
  std::vector<HermiteIndex> idx;
  for (int p = 0; p <= 8; ++p) {
    for (int q = 0; q <= 8; ++q) {
      basis.push_back(b_coeffs({p, q}));
      idx.push_back({p, q});
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Rational sq = gaussian_inner(basis[i], basis[j]).squared_magnitude();
      ASSERT_EQ(sq, i == j ? 1 : 0) << idx[i].p << idx[i].q << ' ' << idx[j].p << idx[j].q;
    }
  }
}

TEST(BEval, Examples) {
  EXPECT_NEAR(std::abs(b_eval({1, 1}, 2.0) - 3.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b_eval({2, 0}, {1, 1}) - cd(0, std::sqrt(2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b_eval({0, 0}, {-3.0, 7.5}) - 1.0), 0.0, 1e-15);
}

// Evaluates the body in exact arithmetic at the (exactly representable) point z.
cd exact_value(const ScaledPolynomial& f, cd z) {
  const ComplexRational w{Rational(z.real()), Rational(z.imag())};
  ComplexRational sum;
  for (const auto& [e, c] : f.body.terms()) {
    ComplexRational term = c;
    for (int i = 0; i < e[kVarZ]; ++i) term = term * w;
    for (int i = 0; i < e[kVarZbar]; ++i) term = term * w.conj();
    sum = sum + term;
  }
  return sum.to_complex() * std::sqrt(to_double(f.scale_sq));
}

TEST(BEval, MatchesExactPolynomial) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  for (int p = 0; p <= 16; p += 3) {
    for (int q = 0; q <= 16; q += 2) {
      const ScaledPolynomial exact = b_coeffs({p, q});
      for (int s = 0; s < 4; ++s) {
        const cd z(coord(gen), coord(gen));
        if (std::abs(z) > 6.0) continue;
        // Errors are measured on the scale e^{|z|^2/2} of |b(z)| e^{-|z|^2/2} <= 1.
        const double scale = std::exp(std::norm(z) / 2);
        EXPECT_LE(std::abs(b_eval({p, q}, z) - exact_value(exact, z)), 1e-10 * scale)
            << p << ' ' << q << ' ' << z;
      }
    }
  }
}

TEST(BEvalPolar, Examples) {
  EXPECT_NEAR(std::abs(b_eval_polar({0, 0}, 3.0, 1.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b_eval_polar({1, 0}, 2.0, {0, 1}) - cd(0, 2)), 0.0, 1e-14);
  for (const double theta : {0.0, 0.3, 2.0, -1.1}) {
    EXPECT_NEAR(std::abs(b_eval_polar({1, 1}, 1.0, std::polar(1.0, theta))), 0.0, 1e-14);
  }
  EXPECT_THROW(b_eval_polar({1, 1}, 1.0, {1.0, 1e-3}), std::invalid_argument);
}

TEST(BEvalPolar, AgreesWithCartesian) {
  for (int p = 0; p <= 10; ++p) {
    for (int q = 0; q <= 10; ++q) {
      for (const double r : {0.0, 0.7, 3.1, 7.0}) {
        const cd tau = std::polar(1.0, 0.4 + p - 0.3 * q);
        const cd a = b_eval_polar({p, q}, r, tau);
        const cd b = b_eval({p, q}, r * tau);
        EXPECT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b)));
      }
    }
  }
}

TEST(BEval, RotationEigenrelation) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const cd z(u(gen), u(gen));
    const cd tau = std::polar(1.0, 3 * u(gen));
    for (int p = 0; p <= 6; ++p) {
      for (int q = 0; q <= 6; ++q) {
        const cd lhs = b_eval({p, q}, z / tau);
        const cd rhs = std::pow(tau, q - p) * b_eval({p, q}, z);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST(TruncatedDiagonal, PolarFactorization) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> g;
  for (int d = -3; d <= 3; ++d) {
    for (int m = 1; m <= 4; ++m) {
      const auto idx = truncated_diagonal({d, m, std::nullopt});
      std::vector<cd> c;
      for (std::size_t i = 0; i < idx.size(); ++i) c.emplace_back(g(gen), g(gen));
      const cd tau = std::polar(1.0, 0.77);
      const int rows = m + 2;
      Eigen::MatrixXcd vander(rows, m);
      Eigen::VectorXcd values(rows);
      for (int i = 0; i < rows; ++i) {
        const double r = 0.4 + 0.5 * i;
        cd f = 0;
        for (std::size_t j = 0; j < idx.size(); ++j) f += c[j] * b_eval(idx[j], r * tau);
        values(i) = f * std::pow(tau, -d) * std::pow(r, -std::abs(d));
        for (int k = 0; k < m; ++k) vander(i, k) = std::pow(r * r, k);
      }
      const Eigen::VectorXcd coef = vander.colPivHouseholderQr().solve(values);
      EXPECT_LE((vander * coef - values).norm(), 1e-10 * values.norm()) << d << ' ' << m;
    }
  }
}

TEST(MonomialBInner, Examples) {
  const SignedSqrt one = monomial_b_inner(0, 0, 0);
  EXPECT_EQ(one.sign, 1);
  EXPECT_EQ(one.square, 1);
  const SignedSqrt six = monomial_b_inner(2, 1, 1);
  EXPECT_EQ(six.sign, 1);
  EXPECT_EQ(six.square, 6);
  EXPECT_NEAR(six.to_double(), std::sqrt(6.0), 1e-15);
  EXPECT_EQ(monomial_b_inner(1, 0, 1).sign, 0);
  EXPECT_THROW(monomial_b_inner(0, 2, 1), std::invalid_argument);
}

TEST(MonomialBInner, ClosedFormForAllSmallIndices) {
  for (int d = -4; d <= 4; ++d) {
    for (int q = std::max(0, -d); q <= 6; ++q) {
      for (int k = std::max(0, -d); k <= q; ++k) {
        const SignedSqrt v = monomial_b_inner(d, k, q);
        if (k < q) {
          EXPECT_EQ(v.sign, 0);
        } else {
          EXPECT_EQ(v.sign, 1);
          EXPECT_EQ(v.square, Rational(factorial(q) * factorial(d + q)));
        }
      }
    }
  }
}

TEST(TruncatedDiagonal, Examples) {
  using V = std::vector<HermiteIndex>;
  EXPECT_EQ(truncated_diagonal({-1, 3, std::nullopt}), (V{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(truncated_diagonal({2, 2, std::nullopt}), (V{{2, 0}, {3, 1}}));
  EXPECT_EQ(truncated_diagonal({0, 1, std::nullopt}), (V{{0, 0}}));
}

TEST(TruncatedDiagonal, SpaceOrderFixesCount) {
  EXPECT_EQ(truncated_diagonal({-1, 2, 3}).size(), 2u);
  EXPECT_THROW(truncated_diagonal({-1, 3, 3}), std::invalid_argument);
  EXPECT_THROW(truncated_diagonal({-3, 1, 3}), std::invalid_argument);
  EXPECT_THROW(truncated_diagonal({0, 0, std::nullopt}), std::invalid_argument);
}

}  // namespace
}  // namespace polyfock
