#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nashforge {

/// Exact rational number; always canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", "p" or a decimal literal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const auto frac_len = s.size() - dot - 1;
    Integer num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return make_rational(num, den);
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Rounds a double onto the dyadic grid 2^-bits; exact and sign-symmetric.
inline Rational snap_to_dyadic(double value, int bits = 48) {
  if (!std::isfinite(value)) throw std::invalid_argument("snap_to_dyadic: non-finite value");
  const double scaled = std::ldexp(value, bits);
  const double rounded = std::round(scaled);
  Integer num;
  mpz_set_d(num.get_mpz_t(), rounded);
  Integer den = 1;
  den <<= static_cast<mp_bitcnt_t>(bits);
  return make_rational(num, den);
}

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;  // powers of a reduced fraction stay reduced
}

}  // namespace nashforge
