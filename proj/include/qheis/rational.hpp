#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qheis {

/**
 * Exact rational number over 64-bit integers.
 *
 * All exact tensor computations involve tiny numerators (structure constants
 * are 0, +-1, +-2 times powers of lambda), so int64 never overflows at desk
 * scale; a range guard throws if that assumption is ever violated.
 */
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/**
 * Polynomial in the symbolic deformation constant lambda with exact rational
 * coefficients.  Degrees stay tiny (<= 3 in the order-3 tensor identities),
 * so a dense coefficient vector suffices.
 */
struct LambdaPoly {
  std::vector<Rational> coeffs;  // coeffs[k] multiplies lambda^k

  LambdaPoly() = default;
  LambdaPoly(Rational c) : coeffs{c} { trim(); }
  LambdaPoly(std::int64_t c) : coeffs{Rational(c)} { trim(); }

  /// c * lambda^k.
  static LambdaPoly term(Rational c, std::size_t k) {
    LambdaPoly p;
    p.coeffs.assign(k + 1, Rational(0));
    p.coeffs[k] = c;
    p.trim();
    return p;
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }

  bool is_zero() const { return coeffs.empty(); }

  friend LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] = a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k)
      out.coeffs[k] = out.coeffs[k] + b.coeffs[k];
    out.trim();
    return out;
  }
  friend LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b) {
    return a + (-b);
  }
  friend LambdaPoly operator-(const LambdaPoly& a) {
    LambdaPoly out = a;
    for (auto& c : out.coeffs) c = -c;
    return out;
  }
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LambdaPoly out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        out.coeffs[i + j] = out.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
    out.trim();
    return out;
  }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    return (a - b).is_zero();
  }

  /// Exact evaluation at a rational value of lambda.
  Rational eval_rational(const Rational& lambda) const {
    Rational v(0);
    for (std::size_t k = coeffs.size(); k-- > 0;)
      v = v * lambda + coeffs[k];
    return v;
  }

  double eval(double lambda) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;)
      v = v * lambda + coeffs[k].to_double();
    return v;
  }
};

}  // namespace qheis
