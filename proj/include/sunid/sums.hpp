#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "sunid/exact.hpp"
#include "sunid/polynomial.hpp"

// Closed-form and direct-summation evaluators for the master identity, its
// generalization, and the four reduced identities obtained by setting
// x = m - k, plus the reduction-chain consistency checks that tie them
// together. Everything is evaluated term by term in exact arithmetic; the
// generalized binomial makes out-of-range terms exact zeros.
namespace sunid::sums {

inline void require_reduced(long long m, long long k, long long b, long long q) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  if (k < 0 || k > m) throw std::domain_error("k must satisfy 0 <= k <= m");
  if (b < 0) throw std::domain_error("b must be nonnegative");
  if (q < 0) throw std::domain_error("q must be nonnegative");
}

struct CheckResult {
  bool ok = true;
  std::string failed;  // name of the first violated equality, empty when ok
  std::string detail;
};

// ---------------------------------------------------------------------------
// Master identity, z = 1 form:
//   sum_i (x+m+1)(-1)^i C(x+y+i, m-i) C(y+2i, i) - sum_i C(x+i, m-i)(-4)^i
//     = (x-m) C(x, m)
// ---------------------------------------------------------------------------

inline Integer lhs1(const Integer& x, const Integer& y, long long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  Integer s1{0};
  for (long long i = 0; i <= m; ++i) {
    Integer t = binomial(x + y + i, m - i) * binomial(y + 2 * i, i);
    s1 += (i % 2 == 0) ? t : -t;
  }
  s1 *= x + m + 1;
  Integer s2{0};
  for (long long i = 0; i <= m; ++i)
    s2 += binomial(x + i, m - i) * int_pow(Integer(-4), i);
  return s1 - s2;
}

inline Integer rhs1(const Integer& x, long long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  return (x - m) * binomial(x, m);
}

// ---------------------------------------------------------------------------
// Generalization in z:
//   (x+(m+1)z) sum_n (-1)^n C(x+y+nz, m-n) C(y+n(z+1), n)
//     = z sum_{0<=l<=n<=m} (-1)^n C(n,l) C(x+l, m-n) (1+z)^{n+l} (1-z)^{n-l}
//       + (x-m) C(x, m)
// ---------------------------------------------------------------------------

inline Integer lhs2(const Integer& x, const Integer& y, const Integer& z, long long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  Integer s{0};
  for (long long n = 0; n <= m; ++n) {
    Integer t = binomial(x + y + n * z, m - n) * binomial(y + n * (z + 1), n);
    s += (n % 2 == 0) ? t : -t;
  }
  return (x + (m + 1) * z) * s;
}

inline Integer rhs2(const Integer& x, const Integer& y, const Integer& z, long long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  Integer s{0};
  for (long long n = 0; n <= m; ++n)
    for (long long l = 0; l <= n; ++l) {
      Integer t = binomial(Integer(n), l) * binomial(x + l, m - n) *
                  int_pow(1 + z, n + l) * int_pow(1 - z, n - l);
      s += (n % 2 == 0) ? t : -t;
    }
  return z * s + (x - m) * binomial(x, m);
}

// ---------------------------------------------------------------------------
// Both sides of the master identities as polynomials in x. Both returned
// polynomials have degree m+1 and leading coefficient 1/m!; their equality is
// the identity statement.
// ---------------------------------------------------------------------------

inline std::pair<XPoly, XPoly> poly_sides1(const Integer& y, long long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  const XPoly x = XPoly::variable("x");
  auto shifted = [&](const Integer& a) {  // x + a
    return x + XPoly::constant("x", Rational(a));
  };

  XPoly first("x");
  for (long long i = 0; i <= m; ++i) {
    XPoly t = binomial_poly(shifted(y + i), m - i) * Rational(binomial(y + 2 * i, i));
    first += (i % 2 == 0) ? t : -t;
  }
  XPoly lhs = shifted(m + 1) * first;
  for (long long i = 0; i <= m; ++i)
    lhs -= binomial_poly(shifted(i), m - i) * Rational(int_pow(Integer(-4), i));

  XPoly rhs = shifted(-m) * binomial_poly(x, m);
  return {lhs, rhs};
}

inline std::pair<XPoly, XPoly> poly_sides2(const Integer& y, const Integer& z, long long m) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  const XPoly x = XPoly::variable("x");
  auto shifted = [&](const Integer& a) {
    return x + XPoly::constant("x", Rational(a));
  };

  XPoly inner("x");
  for (long long n = 0; n <= m; ++n) {
    XPoly t = binomial_poly(shifted(y + n * z), m - n) *
              Rational(binomial(y + n * (z + 1), n));
    inner += (n % 2 == 0) ? t : -t;
  }
  XPoly lhs = shifted((m + 1) * z) * inner;

  XPoly rhs("x");
  for (long long n = 0; n <= m; ++n)
    for (long long l = 0; l <= n; ++l) {
      Rational c = Rational(binomial(Integer(n), l) * int_pow(1 + z, n + l) *
                            int_pow(1 - z, n - l));
      XPoly t = binomial_poly(shifted(l), m - n) * c;
      rhs += (n % 2 == 0) ? t : -t;
    }
  rhs = rhs * Rational(z);
  rhs += shifted(-m) * binomial_poly(x, m);
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Reduced identities (x = m - k, summation index reversed).
// ---------------------------------------------------------------------------

/// sum_i (-1)^i C(2m+b-k-i, i) C(2m+b-2i, m-i); equals 2^k.
inline Integer eq3_sum(long long m, long long k, long long b) {
  require_reduced(m, k, b, 0);
  Integer s{0};
  for (long long i = 0; i <= m; ++i) {
    Integer t = binomial(Integer(2 * m + b - k - i), i) *
                binomial(Integer(2 * m + b - 2 * i), m - i);
    s += (i % 2 == 0) ? t : -t;
  }
  return s;
}

inline Integer eq3_closed(long long k) { return int_pow(Integer(2), k); }

/// sum_i (-1)^i C(2m-k-i, i) 2^{2m-2i}; equals (2m-k+1) 2^k.
inline Integer eq4_sum(long long m, long long k) {
  require_reduced(m, k, 0, 0);
  Integer s{0};
  for (long long i = 0; i <= m; ++i) {
    Integer t = binomial(Integer(2 * m - k - i), i) * int_pow(Integer(2), 2 * (m - i));
    s += (i % 2 == 0) ? t : -t;
  }
  return s;
}

inline Integer eq4_closed(long long m, long long k) {
  return Integer(2 * m - k + 1) * int_pow(Integer(2), k);
}

/// sum_i (-1)^i C((q+1)m-k+b-qi, i) C((q+1)m+b-(q+1)i, m-i);
/// equals q^{m-k} (1+q)^k (with 0^0 = 1).
inline Integer eq5_sum(long long m, long long k, long long b, long long q) {
  require_reduced(m, k, b, q);
  Integer s{0};
  for (long long i = 0; i <= m; ++i) {
    Integer t = binomial(Integer((q + 1) * m - k + b - q * i), i) *
                binomial(Integer((q + 1) * m + b - (q + 1) * i), m - i);
    s += (i % 2 == 0) ? t : -t;
  }
  return s;
}

inline Integer eq5_closed(long long m, long long k, long long q) {
  return int_pow(Integer(q), m - k) * int_pow(Integer(q + 1), k);
}

/// sum_{0<=j<=i<=m} (-1)^{m-i} C(i,j) C(m-k+j, m-i) (1+q)^{i+j-k} (1-q)^{i-j}
/// for 0 <= k < m, with q symbolic. Terms with C(m-k+j, m-i) = 0 are skipped;
/// on every surviving term i+j >= k, so the exponent is never negative.
inline QPoly eq6_poly(long long m, long long k) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  if (k < 0 || k >= m)
    throw std::domain_error("eq6 requires 0 <= k < m (use eq6_special for k = m)");
  const QPoly one_plus = QPoly("q", {Integer(1), Integer(1)});
  const QPoly one_minus = QPoly("q", {Integer(1), Integer(-1)});
  QPoly s("q");
  for (long long i = 0; i <= m; ++i)
    for (long long j = 0; j <= i; ++j) {
      Integer c2 = binomial(Integer(m - k + j), m - i);
      if (c2 == 0) continue;
      QPoly t = one_plus.pow(static_cast<unsigned>(i + j - k)) *
                one_minus.pow(static_cast<unsigned>(i - j));
      t = t * (binomial(Integer(i), j) * c2);
      s += ((m - i) % 2 == 0) ? t : -t;
    }
  return s;
}

inline Integer eq6_sum(long long m, long long k, long long q) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  if (k < 0 || k >= m)
    throw std::domain_error("eq6 requires 0 <= k < m (use eq6_special for k = m)");
  Integer s{0};
  for (long long i = 0; i <= m; ++i)
    for (long long j = 0; j <= i; ++j) {
      Integer c2 = binomial(Integer(m - k + j), m - i);
      if (c2 == 0) continue;
      Integer t = binomial(Integer(i), j) * c2 *
                  int_pow(Integer(1 + q), i + j - k) * int_pow(Integer(1 - q), i - j);
      s += ((m - i) % 2 == 0) ? t : -t;
    }
  return s;
}

/// ((m-k) + (m+1)q) q^{m-k-1} as a polynomial, for 0 <= k < m.
inline QPoly eq6_closed_poly(long long m, long long k) {
  if (k < 0 || k >= m) throw std::domain_error("eq6 closed form requires 0 <= k < m");
  const auto e = static_cast<std::size_t>(m - k - 1);
  QPoly r = QPoly::monomial("q", Integer(m - k), e);
  r += QPoly::monomial("q", Integer(m + 1), e + 1);
  return r;
}

/// k = m case: sum_{0<=j<=i<=m} (-1)^{m-i} C(i,j) C(j, m-i)
/// (1+q)^{i+j-m} (1-q)^{i-j} = m+1 for every q.
inline Integer eq6_special_sum(long long m, long long q) {
  if (m < 0) throw std::domain_error("m must be nonnegative");
  Integer s{0};
  for (long long i = 0; i <= m; ++i)
    for (long long j = 0; j <= i; ++j) {
      Integer c2 = binomial(Integer(j), m - i);
      if (c2 == 0) continue;  // forces i+j >= m
      Integer t = binomial(Integer(i), j) * c2 *
                  int_pow(Integer(1 + q), i + j - m) * int_pow(Integer(1 - q), i - j);
      s += ((m - i) % 2 == 0) ? t : -t;
    }
  return s;
}

inline Integer eq6_special_closed(long long m) { return Integer(m + 1); }

/// The matrix-family sum before factoring out (1+q)^k:
/// sum_{0<=j<=i<=m} (-1)^{m-i} C(i,j) C(m-k+j, m-i) (1+q)^{i+j} (1-q)^{i-j}.
/// Valid for 0 <= k <= m; equals (1+q)^k * eq6_sum(m,k,q) for k < m and
/// (1+q)^m * eq6_special_sum(m,q) for k = m.
inline Integer matrix_sum_unreduced(long long m, long long k, long long q) {
  require_reduced(m, k, 0, q);
  Integer s{0};
  for (long long i = 0; i <= m; ++i)
    for (long long j = 0; j <= i; ++j) {
      Integer c2 = binomial(Integer(m - k + j), m - i);
      if (c2 == 0) continue;
      Integer t = binomial(Integer(i), j) * c2 *
                  int_pow(Integer(1 + q), i + j) * int_pow(Integer(1 - q), i - j);
      s += ((m - i) % 2 == 0) ? t : -t;
    }
  return s;
}

// ---------------------------------------------------------------------------
// Reduction chains: the algebraic pipeline from the master identities down to
// the reduced ones, verified numerically at one parameter point.
// ---------------------------------------------------------------------------

namespace detail {
inline CheckResult fail(std::string name, std::string detail) {
  return CheckResult{false, std::move(name), std::move(detail)};
}
template <class A, class B>
std::string eq_detail(const A& lhs, const B& rhs) {
  std::ostringstream out;
  out << lhs << " != " << rhs;
  return out.str();
}
}  // namespace detail

/// Checks, at (m, k, b):
///  (a) rhs1(m-k, m) = 0,
///  (b) lhs1(m-k, b, m) = (-1)^m [(2m-k+1) eq3_sum - eq4_sum],
///  (c) (2m-k+1) eq3_sum = eq4_sum.
inline CheckResult reduction_chain1(long long m, long long k, long long b) {
  require_reduced(m, k, b, 0);
  const Integer r = rhs1(Integer(m - k), m);
  if (r != 0) return detail::fail("rhs1_vanishes", detail::eq_detail(r, 0));

  const Integer e3 = eq3_sum(m, k, b);
  const Integer e4 = eq4_sum(m, k);
  const Integer sign = (m % 2 == 0) ? 1 : -1;
  const Integer left = lhs1(Integer(m - k), Integer(b), m);
  const Integer right = sign * (Integer(2 * m - k + 1) * e3 - e4);
  if (left != right)
    return detail::fail("lhs1_matches_reduced_sums", detail::eq_detail(left, right));

  if (Integer(2 * m - k + 1) * e3 != e4)
    return detail::fail("eq3_eq4_consistency",
                        detail::eq_detail(Integer(2 * m - k + 1) * e3, e4));
  return {};
}

/// Checks, at (m, k, b, q):
///  (a) ((m-k)+(m+1)q) eq5_sum = q * S with S = matrix_sum_unreduced,
///  (b) S = (1+q)^k eq6_sum (k < m) resp. (1+q)^m eq6_special_sum (k = m),
///      and q*S = ((m-k)+(m+1)q) q^{m-k} (1+q)^k,
///  (c) lhs2(m-k, b, q, m) = rhs2(m-k, b, q, m).
inline CheckResult reduction_chain2(long long m, long long k, long long b, long long q) {
  require_reduced(m, k, b, q);
  const Integer s = matrix_sum_unreduced(m, k, q);
  const Integer factor = Integer(m - k) + Integer(m + 1) * q;
  const Integer left_a = factor * eq5_sum(m, k, b, q);
  const Integer right_a = q * s;
  if (left_a != right_a)
    return detail::fail("eq5_matches_matrix_sum", detail::eq_detail(left_a, right_a));

  if (k < m) {
    const Integer via_eq6 = int_pow(Integer(1 + q), k) * eq6_sum(m, k, q);
    if (s != via_eq6)
      return detail::fail("matrix_sum_factors", detail::eq_detail(s, via_eq6));
    const Integer closed = factor * int_pow(Integer(q), m - k) * int_pow(Integer(1 + q), k);
    if (q * s != closed)
      return detail::fail("matrix_sum_closed_form", detail::eq_detail(q * s, closed));
  } else {
    const Integer via_special = int_pow(Integer(1 + q), m) * eq6_special_sum(m, q);
    if (s != via_special)
      return detail::fail("matrix_sum_factors", detail::eq_detail(s, via_special));
  }

  const Integer l2 = lhs2(Integer(m - k), Integer(b), Integer(q), m);
  const Integer r2 = rhs2(Integer(m - k), Integer(b), Integer(q), m);
  if (l2 != r2) return detail::fail("master2_at_reduced_point", detail::eq_detail(l2, r2));
  return {};
}

}  // namespace sunid::sums
