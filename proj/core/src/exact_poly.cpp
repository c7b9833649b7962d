#include "polyfock/exact_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace polyfock {

namespace {

std::vector<BigInt> build_factorial_table() {
  std::vector<BigInt> table(kFactorialCacheSize + 1);
  table[0] = 1;
  for (int i = 1; i <= kFactorialCacheSize; ++i) table[i] = table[i - 1] * i;
  return table;
}

}  // namespace

BigInt factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  static const std::vector<BigInt> table = build_factorial_table();
  if (n <= kFactorialCacheSize) return table[n];
  BigInt out = table[kFactorialCacheSize];
  for (int i = kFactorialCacheSize + 1; i <= n; ++i) out *= i;
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::ostream& operator<<(std::ostream& os, const ComplexRational& c) {
  if (c.im == 0) return os << c.re;
  return os << '(' << c.re << (c.im < 0 ? " - " : " + ")
            << (c.im < 0 ? Rational(-c.im) : c.im) << "i)";
}

BiPolynomial monomial(int p, int q, const ComplexRational& c) {
  if (p < 0 || q < 0) throw std::invalid_argument("monomial: negative exponent");
  return BiPolynomial::monomial({p, q}, c);
}

BiPolynomial wirtinger_dz(const BiPolynomial& f) { return f.derivative(kVarZ); }

BiPolynomial wirtinger_dzbar(const BiPolynomial& f) { return f.derivative(kVarZbar); }

BiPolynomial creation_adagger(const BiPolynomial& f) {
  return f.times_variable(kVarZbar) - wirtinger_dz(f);
}

BiPolynomial creation_adagger_bar(const BiPolynomial& f) {
  return f.times_variable(kVarZ) - wirtinger_dzbar(f);
}

BiPolynomial conjugate(const BiPolynomial& f) {
  BiPolynomial out;
  for (const auto& [e, c] : f.terms()) out.add_term({e[1], e[0]}, c.conj());
  return out;
}

BigInt monomial_inner(int p, int q, int j, int k) {
  // angular integral kills everything off the diagonal p - q = j - k;
  // the radial part is a Gamma integral.
  if (p + k != q + j) return 0;
  return factorial(p + k);
}

ComplexRational gaussian_inner(const BiPolynomial& f, const BiPolynomial& g) {
  ComplexRational acc;
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      if (ef[0] + eg[1] != ef[1] + eg[0]) continue;
      acc += cf * cg.conj() * ComplexRational(Rational(factorial(ef[0] + eg[1])));
    }
  }
  return acc;
}

std::complex<double> evaluate(const BiPolynomial& f, std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  const std::complex<double> zb = std::conj(z);
  for (const auto& [e, c] : f.terms()) {
    acc += c.to_complex() * std::pow(z, e[0]) * std::pow(zb, e[1]);
  }
  return acc;
}

std::string to_string(const BiPolynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second;
    if (it->first[0] > 0) os << "*z^" << it->first[0];
    if (it->first[1] > 0) os << "*zb^" << it->first[1];
  }
  return os.str();
}

std::complex<double> ScaledPolynomial::evaluate(std::complex<double> z) const {
  return std::sqrt(to_double(scale_sq)) * polyfock::evaluate(body, z);
}

std::optional<ComplexRational> ScaledValue::exact() const {
  auto root = exact_sqrt(scale_sq);
  if (!root) {
    if (value.is_zero()) return ComplexRational{};
    return std::nullopt;
  }
  return value * ComplexRational(*root);
}

std::complex<double> ScaledValue::to_complex() const {
  return std::sqrt(to_double(scale_sq)) * value.to_complex();
}

ScaledValue gaussian_inner(const ScaledPolynomial& f, const ScaledPolynomial& g) {
  return {gaussian_inner(f.body, g.body), f.scale_sq * g.scale_sq};
}

Rational squared_norm(const ScaledPolynomial& f) {
  return f.scale_sq * gaussian_inner(f.body, f.body).re;
}

}  // namespace polyfock
