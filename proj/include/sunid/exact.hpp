#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sunid {

// All arithmetic in this library is exact. Integer is an arbitrary-precision
// signed integer, Rational is always stored in lowest terms with a positive
// denominator (the backend canonicalizes on every operation).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serialization used by the report schema: integers as decimal strings,
// rationals as "num/den".
inline std::string to_decimal(const Integer& v) { return v.str(); }

inline std::string to_fraction(const Rational& v) {
  return numerator(v).str() + "/" + denominator(v).str();
}

// base^exp with the convention 0^0 = 1.
inline Integer int_pow(Integer base, unsigned long long exp) {
  Integer r{1};
  while (exp != 0) {
    if (exp & 1ULL) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

inline Integer factorial(long long n) {
  if (n < 0) throw std::domain_error("factorial of negative argument");
  Integer r{1};
  for (long long t = 2; t <= n; ++t) r *= t;
  return r;
}

/// Generalized binomial coefficient: 0 for r < 0, otherwise the falling
/// factorial n(n-1)...(n-r+1)/r!. Defined for negative n as well, e.g.
/// binomial(-1, 3) = -1.
inline Integer binomial(const Integer& n, const Integer& r) {
  if (r < 0) return Integer{0};
  if (r > 1000000) throw std::overflow_error("binomial: lower index too large");
  const long long rl = r.convert_to<long long>();
  Integer num{1};
  for (long long t = 0; t < rl; ++t) {
    num *= (n - t);
    if (num == 0) return num;  // nonnegative n with r > n
  }
  return num / factorial(rl);
}

inline Integer binomial(const Integer& n, long long r) { return binomial(n, Integer(r)); }
inline Integer binomial(long long n, long long r) { return binomial(Integer(n), Integer(r)); }

}  // namespace sunid
