#pragma once

// Univariate rational polynomials in s and the extension ring Q[s][sqrt(s)].
// Elements of the extension are g0(s) + g1(s) * sqrt(s); sqrt(s) * sqrt(s) = s.

#include <nashforge/rational.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nashforge {

/// Dense univariate polynomial, coefficient i multiplies s^i. No trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly monomial(unsigned degree, const Rational& c = 1) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly s() { return monomial(1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  /// Largest j with s^j dividing the polynomial; -1 for zero.
  int lowest_power() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  UniPoly& operator*=(const Rational& c) {
    for (auto& v : coeffs_) v *= c;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(UniPoly a) { return a *= Rational(-1); }
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  UniPoly pow(unsigned exponent) const {
    UniPoly result = constant(1);
    UniPoly base = *this;
    while (exponent > 0) {
      if (exponent & 1U) result *= base;
      exponent >>= 1U;
      if (exponent > 0) base *= base;
    }
    return result;
  }

  /// p(q(s)).
  UniPoly compose(const UniPoly& q) const {
    UniPoly out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * q + constant(*it);
    return out;
  }

  UniPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return UniPoly(std::move(out));
  }

  /// Euclidean division; returns {quotient, remainder}.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("UniPoly::divmod: zero divisor");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    const Rational& lead = divisor.coeffs_.back();
    if (degree() < dd) return {UniPoly(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    for (int i = degree(); i >= dd; --i) {
      const Rational& top = rem[static_cast<std::size_t>(i)];
      if (top == 0) continue;
      Rational factor = top / lead;
      quot[static_cast<std::size_t>(i - dd)] = factor;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(i - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
  }

  bool divisible_by(const UniPoly& divisor) const { return divmod(divisor).second.is_zero(); }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[i].get_str() + ")";
      if (i >= 1) out += "s";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// (s - root)^power.
inline UniPoly shifted_power(const Rational& root, unsigned power) {
  return UniPoly({-root, Rational(1)}).pow(power);
}

/// g0(s) + g1(s) * sqrt(s).
struct SqrtElem {
  UniPoly g0;
  UniPoly g1;

  static SqrtElem rational_part(UniPoly p) { return {std::move(p), UniPoly()}; }
  static SqrtElem sqrt_s() { return {UniPoly(), UniPoly::constant(1)}; }

  bool is_zero() const { return g0.is_zero() && g1.is_zero(); }

  SqrtElem& operator+=(const SqrtElem& o) {
    g0 += o.g0;
    g1 += o.g1;
    return *this;
  }
  SqrtElem& operator-=(const SqrtElem& o) {
    g0 -= o.g0;
    g1 -= o.g1;
    return *this;
  }
  friend SqrtElem operator+(SqrtElem a, const SqrtElem& b) { return a += b; }
  friend SqrtElem operator-(SqrtElem a, const SqrtElem& b) { return a -= b; }
  friend SqrtElem operator*(const UniPoly& p, const SqrtElem& u) { return {p * u.g0, p * u.g1}; }

  /// (u0 + u1 r)(v0 + v1 r) = (u0 v0 + s u1 v1) + (u0 v1 + u1 v0) r with r = sqrt(s).
  friend SqrtElem operator*(const SqrtElem& u, const SqrtElem& v) {
    return {u.g0 * v.g0 + UniPoly::s() * (u.g1 * v.g1), u.g0 * v.g1 + u.g1 * v.g0};
  }

  friend bool operator==(const SqrtElem& a, const SqrtElem& b) { return a.g0 == b.g0 && a.g1 == b.g1; }

  double eval(double s) const { return g0.eval(s) + g1.eval(s) * std::sqrt(s); }

  /// Exact value at s = root^2 (root >= 0), where sqrt(s) = root is rational.
  Rational eval_at_square(const Rational& root) const {
    if (root < 0) throw std::invalid_argument("SqrtElem::eval_at_square: negative root");
    const Rational s = root * root;
    return g0.eval(s) + g1.eval(s) * root;
  }
};

inline SqrtElem sqrt_mul(const SqrtElem& u, const SqrtElem& v) { return u * v; }

/// True iff divisor divides both the rational part and the sqrt(s) part.
inline bool divisibility_check(const SqrtElem& u, const UniPoly& divisor) {
  if (divisor.is_zero()) throw std::invalid_argument("divisibility_check: zero divisor");
  return u.g0.divisible_by(divisor) && u.g1.divisible_by(divisor);
}

}  // namespace nashforge
