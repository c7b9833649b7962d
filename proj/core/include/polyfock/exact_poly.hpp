#ifndef POLYFOCK_EXACT_POLY_HPP
#define POLYFOCK_EXACT_POLY_HPP

// Exact rational algebra for polynomials in z and conj(z).
//
// Everything in this header is free of floating point (apart from the
// explicit evaluate() helpers); it is the reference layer that the
// floating-point modules are checked against.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyfock {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! as an arbitrary-precision integer. Values up to kFactorialCacheSize
/// are memoized on first use.
inline constexpr int kFactorialCacheSize = 256;
BigInt factorial(int n);
BigInt binomial(int n, int k);

/// Square root of a non-negative rational when it is itself rational.
std::optional<Rational> exact_sqrt(const Rational& x);

double to_double(const Rational& x);

/// Complex number with rational real and imaginary parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  ComplexRational(int r) : re(r) {}                  // NOLINT(implicit)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] ComplexRational conj() const { return {re, -im}; }
  /// |c|^2, exact.
  [[nodiscard]] Rational norm() const { return re * re + im * im; }
  [[nodiscard]] std::complex<double> to_complex() const {
    return {to_double(re), to_double(im)};
  }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::ostream& operator<<(std::ostream& os, const ComplexRational& c);
};

/// Sparse polynomial in V commuting variables with complex rational
/// coefficients. Zero coefficients are never stored.
template <std::size_t V>
class Polynomial {
 public:
  using Exponent = std::array<int, V>;
  using Terms = std::map<Exponent, ComplexRational>;

  Polynomial() = default;

  static Polynomial constant(const ComplexRational& c) {
    Polynomial p;
    p.add_term(Exponent{}, c);
    return p;
  }
  static Polynomial monomial(const Exponent& e, const ComplexRational& c = ComplexRational(1)) {
    Polynomial p;
    p.add_term(e, c);
    return p;
  }
  static Polynomial variable(std::size_t var) {
    Exponent e{};
    e[var] = 1;
    return monomial(e);
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] ComplexRational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ComplexRational{} : it->second;
  }

  /// Highest exponent of `var` appearing in any term (-1 for the zero polynomial).
  [[nodiscard]] int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  void add_term(const Exponent& e, const ComplexRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Formal partial derivative with all other variables held fixed.
  [[nodiscard]] Polynomial derivative(std::size_t var) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent f = e;
      f[var] -= 1;
      out.add_term(f, c * ComplexRational(e[var]));
    }
    return out;
  }

  [[nodiscard]] Polynomial times_variable(std::size_t var) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[var] += 1;
      out.terms_.emplace(f, c);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const ComplexRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= ComplexRational(-1); }
  friend Polynomial operator*(Polynomial a, const ComplexRational& s) { return a *= s; }
  friend Polynomial operator*(const ComplexRational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < V; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  [[nodiscard]] Polynomial pow(int k) const {
    Polynomial out = constant(ComplexRational(1));
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

 private:
  Terms terms_;
};

/// Polynomial in (z, conj z): exponent {j, k} stands for z^j conj(z)^k.
using BiPolynomial = Polynomial<2>;
inline constexpr std::size_t kVarZ = 0;
inline constexpr std::size_t kVarZbar = 1;

/// m_{p,q}(z) = z^p conj(z)^q.
BiPolynomial monomial(int p, int q, const ComplexRational& c = ComplexRational(1));

BiPolynomial wirtinger_dz(const BiPolynomial& f);
BiPolynomial wirtinger_dzbar(const BiPolynomial& f);

/// (conj z - d/dz) f
BiPolynomial creation_adagger(const BiPolynomial& f);
/// (z - d/dconj z) f
BiPolynomial creation_adagger_bar(const BiPolynomial& f);

/// Pointwise complex conjugate: swaps the roles of z and conj z.
BiPolynomial conjugate(const BiPolynomial& f);

/// <m_{p,q}, m_{j,k}> in L2(C, gamma).
BigInt monomial_inner(int p, int q, int j, int k);

/// <f, g> in L2(C, gamma), linear in f and antilinear in g.
ComplexRational gaussian_inner(const BiPolynomial& f, const BiPolynomial& g);

std::complex<double> evaluate(const BiPolynomial& f, std::complex<double> z);

std::string to_string(const BiPolynomial& f);

/// sqrt(scale_sq) * body with a positive rational scale_sq.
struct ScaledPolynomial {
  BiPolynomial body;
  Rational scale_sq{1};

  [[nodiscard]] std::complex<double> evaluate(std::complex<double> z) const;
  /// True when both scale and body coincide. Scaled polynomials that differ
  /// only by a redistribution of the prefactor compare unequal.
  friend bool operator==(const ScaledPolynomial&, const ScaledPolynomial&) = default;
};

/// Inner product of two scaled polynomials kept as sqrt(scale_sq) * value.
struct ScaledValue {
  ComplexRational value;
  Rational scale_sq{1};

  /// |inner|^2, always rational.
  [[nodiscard]] Rational squared_magnitude() const { return scale_sq * value.norm(); }
  /// The inner product itself, if the prefactor is rational.
  [[nodiscard]] std::optional<ComplexRational> exact() const;
  [[nodiscard]] std::complex<double> to_complex() const;
};

ScaledValue gaussian_inner(const ScaledPolynomial& f, const ScaledPolynomial& g);
Rational squared_norm(const ScaledPolynomial& f);

}  // namespace polyfock

#endif  // POLYFOCK_EXACT_POLY_HPP
