#pragma once

// Exact integer and rational helpers shared by the engine, the oracle and the
// renderers. Nothing here touches floating point except to_double().

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "qmvpower/errors.hpp"

namespace qmv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// A fraction num/den with 0 < num/den <= 1, kept as two integers so quota
/// arithmetic never rounds.
struct Fraction {
  std::int64_t num = 1;
  std::int64_t den = 1;

  friend bool operator==(const Fraction&, const Fraction&) = default;

  void validate(const char* what) const {
    if (den <= 0 || num <= 0 || num > den) {
      throw InputError(std::string(what) + " must be a fraction in (0, 1], got " + std::to_string(num) + "/" +
                       std::to_string(den));
    }
  }

  Rational value() const { return Rational(num) / Rational(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// 0!, 1!, ..., n!
inline std::vector<BigInt> factorials(std::size_t n) {
  std::vector<BigInt> f(n + 1);
  f[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) f[k] = f[k - 1] * k;
  return f;
}

/// Rounds p/q to the nearest integer, ties to even.
inline BigInt round_half_even(const BigInt& p, const BigInt& q) {
  BigInt num = p, den = q;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt quot = num / den;
  const BigInt rem2 = (num % den) * 2;
  if (rem2 > den || (rem2 == den && (quot & 1) != 0)) quot += 1;
  return negative ? BigInt(-quot) : quot;
}

/// Renders value x 100 with `decimals` fractional digits, rounded half-even.
/// A result that rounds to zero is printed without a minus sign.
inline std::string format_percent(const Rational& value, int decimals) {
  if (decimals < 0 || decimals > 10) throw InputError("decimals must be in 0..10");
  BigInt scale = 100;
  for (int k = 0; k < decimals; ++k) scale *= 10;
  const Rational scaled = value * Rational(scale);
  const BigInt q = round_half_even(numerator_of(scaled), denominator_of(scaled));
  const bool negative = q < 0;
  const BigInt mag = negative ? BigInt(-q) : q;
  std::string digits = mag.str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return negative ? "-" + digits : digits;
}

}  // namespace qmv
