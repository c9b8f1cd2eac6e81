#pragma once

#include <cstdint>
#include <numeric>

#include "kirbylab/errors.hpp"

namespace kirby {

using Int = std::int64_t;

// All arithmetic is exact: intermediates run in 128 bits and anything that
// cannot be stored back in 64 bits throws instead of wrapping.
inline Int checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw Error(ErrorCode::ArithmeticOverflow, "value exceeds 64-bit range");
  return static_cast<Int>(v);
}

inline Int add(Int a, Int b) { return checked(__int128(a) + b); }
inline Int sub(Int a, Int b) { return checked(__int128(a) - b); }
inline Int mul(Int a, Int b) { return checked(__int128(a) * b); }

// Exact rational on 64-bit parts, normalized with positive denominator.
struct Rational {
  Int num = 0;
  Int den = 1;

  Rational() = default;
  Rational(Int n) : num(n), den(1) {}
  Rational(Int n, Int d) { assign(n, d); }

  void assign(__int128 n, __int128 d) {
    if (d == 0) throw Error(ErrorCode::BadArgument, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num = checked(n);
    den = checked(d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  bool zero() const { return num == 0; }
  int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(__int128(a.num) * b.den + __int128(b.num) * a.den,
             __int128(a.den) * b.den);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(__int128(a.num) * b.den - __int128(b.num) * a.den,
             __int128(a.den) * b.den);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(__int128(a.num) * b.num, __int128(a.den) * b.den);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.zero()) throw Error(ErrorCode::BadArgument, "division by zero");
    Rational r;
    r.assign(__int128(a.num) * b.den, __int128(a.den) * b.num);
    return r;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace kirby
