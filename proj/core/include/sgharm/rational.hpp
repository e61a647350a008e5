#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "sgharm/errors.hpp"

namespace sgharm {

/// Exact fraction on 64-bit integers, always kept reduced with a positive
/// denominator. Arithmetic goes through 128-bit intermediates and throws
/// on overflow rather than silently wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1) {
    if (denominator == 0) throw ValidationError("rational: zero denominator");
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = g ? numerator / g : 0;
    den_ = g ? denominator / g : 1;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q", or just "p" when the denominator is 1.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ValidationError("rational: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

 private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) throw ConsistencyError("rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d == 0 ? 1 : d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace sgharm
