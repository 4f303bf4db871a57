#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace redei {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "num/den" (always with an explicit denominator).
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Smallest integer >= r.
inline BigInt ceil(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt quot = num / den;
  if (num % den != 0 && num > 0) quot += 1;
  return quot;
}

/// Largest integer <= r.
inline BigInt floor(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt quot = num / den;
  if (num % den != 0 && num < 0) quot -= 1;
  return quot;
}

/// Smallest s >= 0 with s^2 >= n.
inline BigInt isqrt_ceil(const BigInt& n) {
  if (n <= 0) return 0;
  BigInt s = boost::multiprecision::sqrt(n);
  if (s * s < n) s += 1;
  return s;
}

}  // namespace redei
