#pragma once

// Sparse multivariate polynomials over the rationals.

#include <nashforge/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nashforge {

using Exponent = std::vector<unsigned>;

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  /// The coordinate function x_index.
  static MultiPoly variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("MultiPoly::variable: index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    MultiPoly p(nvars);
    p.add_term(e, Rational(1));
    return p;
  }

  /// c_0 + sum_i c_{i+1} x_i.
  static MultiPoly affine(std::span<const Rational> coefficients, const Rational& constant_term) {
    const std::size_t n = coefficients.size();
    MultiPoly p = constant(n, constant_term);
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = 1;
      p.add_term(e, coefficients[i]);
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds c * x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw std::invalid_argument("MultiPoly: exponent length does not match nvars");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned best = 0;
    for (const auto& [e, c] : terms_) {
      unsigned deg = 0;
      for (unsigned v : e) deg += v;
      best = std::max(best, deg);
    }
    return best;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_ring(b);
    MultiPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned exponent) const {
    MultiPoly result = constant(nvars_, Rational(1));
    MultiPoly base = *this;
    while (exponent > 0) {
      if (exponent & 1U) result *= base;
      exponent >>= 1U;
      if (exponent > 0) base *= base;
    }
    return result;
  }

  /// Exact partial derivative with respect to x_index.
  MultiPoly derivative(std::size_t index) const {
    if (index >= nvars_) throw std::out_of_range("MultiPoly::derivative: index out of range");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponent d = e;
      d[index] -= 1;
      out.add_term(d, c * e[index]);
    }
    return out;
  }

  /// Re-embeds into a ring with more variables; variable i maps to x_{offset + i}.
  MultiPoly embed(std::size_t new_nvars, std::size_t offset = 0) const {
    if (offset + nvars_ > new_nvars) throw std::invalid_argument("MultiPoly::embed: target ring too small");
    MultiPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponent d(new_nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) d[offset + i] = e[i];
      out.add_term(d, c);
    }
    return out;
  }

  bool depends_on(std::size_t index) const {
    for (const auto& [e, c] : terms_)
      if (e[index] != 0) return true;
    return false;
  }

  double eval(std::span<const double> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = c.get_d();
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned j = 0; j < e[i]; ++j) term *= x[i];
      sum += term;
    }
    return sum;
  }

  Rational eval(std::span<const Rational> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) term *= rational_pow(x[i], e[i]);
      sum += term;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      Rational mag = abs(c);
      bool unit = true;
      for (unsigned v : e) unit = unit && v == 0;
      if (mag != 1 || unit) os << mag.get_str();
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        os << "x" << i + 1;
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  void check_same_ring(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("MultiPoly: operands live in different rings");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline std::vector<MultiPoly> gradient(const MultiPoly& p) {
  std::vector<MultiPoly> out;
  out.reserve(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) out.push_back(p.derivative(i));
  return out;
}

/// Double-precision snapshot of a MultiPoly for bulk evaluation.
class FloatPoly {
 public:
  FloatPoly() = default;
  explicit FloatPoly(const MultiPoly& p) : nvars_(p.nvars()) {
    for (const auto& [e, c] : p.terms()) {
      coeffs_.push_back(c.get_d());
      exps_.insert(exps_.end(), e.begin(), e.end());
    }
  }

  std::size_t nvars() const { return nvars_; }

  double operator()(std::span<const double> x) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      double term = coeffs_[t];
      const unsigned* e = exps_.data() + t * nvars_;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned j = 0; j < e[i]; ++j) term *= x[i];
      sum += term;
    }
    return sum;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<double> coeffs_;
  std::vector<unsigned> exps_;
};

}  // namespace nashforge
