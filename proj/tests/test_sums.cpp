#include <catch2/catch_amalgamated.hpp>

#include "sunid/sums.hpp"

using namespace sunid;
namespace su = sunid::sums;

TEST_CASE("lhs1/rhs1 spot values") {
  // x=3, y=0, m=1 by literal term summation:
  //   (x+m+1)[C(3,1)C(0,0) - C(4,0)C(2,1)] - [C(3,1) + C(4,0)(-4)]
  const Integer oracle =
      Integer(5) * (binomial(3, 1) * binomial(0, 0) - binomial(4, 0) * binomial(2, 1)) -
      (binomial(3, 1) + binomial(4, 0) * Integer(-4));
  CHECK(oracle == 6);
  CHECK(su::lhs1(3, 0, 1) == 6);
  CHECK(su::rhs1(3, 1) == 6);  // (3-1) * C(3,1)

  // factor x - m
  for (long long m = 0; m <= 6; ++m) CHECK(su::rhs1(Integer(m), m) == 0);
}

TEST_CASE("master identity holds numerically") {
  for (long long m = 0; m <= 5; ++m)
    for (long long x = -6; x <= 6; ++x)
      for (long long y = 0; y <= 3; ++y)
        REQUIRE(su::lhs1(x, y, m) == su::rhs1(x, m));
}

TEST_CASE("lhs2/rhs2 spot values") {
  // single-term sums at m=0: lhs2 = (0+2)*C(0,0)C(0,0), rhs2 = 2*1 + 0
  CHECK(su::lhs2(0, 0, 2, 0) == 2);
  CHECK(su::rhs2(0, 0, 2, 0) == 2);

  // z=0, x=m: both sides vanish
  for (long long m = 0; m <= 4; ++m)
    for (long long y = 0; y <= 3; ++y) {
      CHECK(su::rhs2(Integer(m), y, 0, m) == 0);
      CHECK(su::lhs2(Integer(m), y, 0, m) == 0);
    }
}

TEST_CASE("z=1 reduces the generalization to the master identity") {
  for (long long m = 0; m <= 6; ++m)
    for (long long x = -8; x <= 8; ++x)
      for (long long y = 0; y <= 3; ++y) {
        REQUIRE(su::lhs2(x, y, 1, m) == su::lhs1(x, y, m));
        REQUIRE(su::rhs2(x, y, 1, m) == su::rhs1(x, m));
      }
}

TEST_CASE("generalized identity holds numerically") {
  for (long long m = 0; m <= 4; ++m)
    for (long long x = -4; x <= 4; ++x)
      for (long long y = 0; y <= 2; ++y)
        for (long long z = 0; z <= 3; ++z)
          REQUIRE(su::lhs2(x, y, z, m) == su::rhs2(x, y, z, m));
}

TEST_CASE("eq3 spot values") {
  // (1,0,0): terms C(2,0)C(2,1) - C(1,1)C(0,0) = 2 - 1
  CHECK(su::eq3_sum(1, 0, 0) == 1);
  for (long long b = 0; b <= 5; ++b) CHECK(su::eq3_sum(0, 0, b) == 1);
  CHECK(su::eq3_sum(4, 1, 2) == 2);  // 2^k with k = 1
  CHECK_THROWS_AS(su::eq3_sum(3, 4, 0), std::domain_error);
}

TEST_CASE("eq3 equals 2^k") {
  for (long long m = 0; m <= 8; ++m)
    for (long long k = 0; k <= m; ++k)
      for (long long b = 0; b <= 4; ++b)
        REQUIRE(su::eq3_sum(m, k, b) == su::eq3_closed(k));
}

TEST_CASE("eq4 spot values") {
  CHECK(su::eq4_sum(1, 0) == 3);  // 4 - 1
  CHECK(su::eq4_sum(0, 0) == 1);
  CHECK(su::eq4_sum(4, 1) == 16);  // (2m-k+1) 2^k = 8 * 2
}

TEST_CASE("eq4 equals (2m-k+1) 2^k") {
  for (long long m = 0; m <= 8; ++m)
    for (long long k = 0; k <= m; ++k)
      REQUIRE(su::eq4_sum(m, k) == su::eq4_closed(m, k));
}

TEST_CASE("eq5 spot values") {
  // (1,1,0,2): i=0 term C(2,0)C(3,1) = 3, i=1 term has C(0,1) = 0
  CHECK(su::eq5_sum(1, 1, 0, 2) == 3);
  for (long long b = 0; b <= 3; ++b)
    for (long long q = 0; q <= 3; ++q) CHECK(su::eq5_sum(0, 0, b, q) == 1);
}

TEST_CASE("eq5 at q=1 is eq3") {
  for (long long m = 0; m <= 6; ++m)
    for (long long k = 0; k <= m; ++k)
      for (long long b = 0; b <= 3; ++b)
        REQUIRE(su::eq5_sum(m, k, b, 1) == su::eq3_sum(m, k, b));
}

TEST_CASE("eq5 equals q^{m-k} (1+q)^k") {
  for (long long m = 0; m <= 6; ++m)
    for (long long k = 0; k <= m; ++k)
      for (long long b = 0; b <= 3; ++b)
        for (long long q = 0; q <= 4; ++q)
          REQUIRE(su::eq5_sum(m, k, b, q) == su::eq5_closed(m, k, q));
}

TEST_CASE("eq6 polynomial spot values") {
  // three nonzero terms at (1,0): -1, (1-q^2), (1+2q+q^2)
  CHECK(su::eq6_poly(1, 0) == QPoly("q", {Integer(1), Integer(2)}));
  CHECK(su::eq6_sum(1, 0, 0) == 1);  // 0^0 = 1 convention
  for (long long m = 1; m <= 6; ++m)
    CHECK(su::eq6_poly(m, m - 1) == QPoly("q", {Integer(1), Integer(m + 1)}));
  CHECK_THROWS_AS(su::eq6_poly(3, 3), std::domain_error);
  CHECK_THROWS_AS(su::eq6_sum(3, 5, 1), std::domain_error);
}

TEST_CASE("eq6 equals ((m-k)+(m+1)q) q^{m-k-1}") {
  for (long long m = 1; m <= 6; ++m)
    for (long long k = 0; k < m; ++k) {
      REQUIRE(su::eq6_poly(m, k) == su::eq6_closed_poly(m, k));
      for (long long q = 0; q <= 4; ++q)
        REQUIRE(su::eq6_sum(m, k, q) == su::eq6_poly(m, k).eval(Integer(q)));
    }
}

TEST_CASE("eq6 special case equals m+1") {
  // (1,q): terms (1-q) + (1+q)
  for (long long q = 0; q <= 4; ++q) CHECK(su::eq6_special_sum(1, q) == 2);
  CHECK(su::eq6_special_sum(0, 3) == 1);
  CHECK(su::eq6_special_sum(8, 3) == 9);
  for (long long m = 0; m <= 8; ++m)
    for (long long q = 0; q <= 4; ++q)
      REQUIRE(su::eq6_special_sum(m, q) == su::eq6_special_closed(m));
}

TEST_CASE("polynomial sides of the master identity") {
  for (long long m = 0; m <= 6; ++m)
    for (long long y = 0; y <= 3; ++y) {
      const auto [lhs, rhs] = su::poly_sides1(Integer(y), m);
      REQUIRE(lhs.degree() == m + 1);
      REQUIRE(rhs.degree() == m + 1);
      const Rational lead(Integer(1), factorial(m));
      REQUIRE(leading_coefficient(lhs) == lead);
      REQUIRE(leading_coefficient(rhs) == lead);
      for (long long x = 0; x <= m; ++x)
        REQUIRE(poly_eval(rhs, Rational(x)) == 0);
      REQUIRE(poly_equal(lhs, rhs));
    }
}

TEST_CASE("polynomial sides agree with direct evaluation") {
  for (long long m = 0; m <= 4; ++m)
    for (long long y = 0; y <= 2; ++y) {
      const auto [lhs, rhs] = su::poly_sides1(Integer(y), m);
      for (long long x = -10; x <= 10; ++x) {
        REQUIRE(poly_eval(lhs, Rational(x)) == Rational(su::lhs1(x, y, m)));
        REQUIRE(poly_eval(rhs, Rational(x)) == Rational(su::rhs1(x, m)));
      }
    }
}

TEST_CASE("polynomial sides of the generalization") {
  for (long long m = 0; m <= 5; ++m)
    for (long long y = 0; y <= 3; ++y)
      for (long long z = 0; z <= 3; ++z) {
        const auto [lhs, rhs] = su::poly_sides2(Integer(y), Integer(z), m);
        REQUIRE(lhs.degree() == m + 1);
        REQUIRE(leading_coefficient(lhs) == Rational(Integer(1), factorial(m)));
        REQUIRE(leading_coefficient(rhs) == Rational(Integer(1), factorial(m)));
        REQUIRE(poly_equal(lhs, rhs));
        if (z == 1) {
          const auto [l1, r1] = su::poly_sides1(Integer(y), m);
          REQUIRE(poly_equal(lhs, l1));
          REQUIRE(poly_equal(rhs, r1));
        }
      }
}

TEST_CASE("reduction chain for the master identity") {
  const auto r = su::reduction_chain1(4, 1, 2);
  CHECK(r.ok);
  for (long long m = 0; m <= 6; ++m)
    for (long long k = 0; k <= m; ++k)
      for (long long b = 0; b <= 3; ++b) {
        const auto cr = su::reduction_chain1(m, k, b);
        INFO("m=" << m << " k=" << k << " b=" << b << " failed=" << cr.failed
                  << " " << cr.detail);
        REQUIRE(cr.ok);
      }
}

TEST_CASE("reduction chain for the generalization") {
  CHECK(su::reduction_chain2(1, 0, 0, 2).ok);
  for (long long m = 0; m <= 5; ++m)
    for (long long k = 0; k <= m; ++k)
      for (long long b = 0; b <= 2; ++b)
        for (long long q = 0; q <= 3; ++q) {
          const auto cr = su::reduction_chain2(m, k, b, q);
          INFO("m=" << m << " k=" << k << " b=" << b << " q=" << q
                    << " failed=" << cr.failed << " " << cr.detail);
          REQUIRE(cr.ok);
        }
}

TEST_CASE("unreduced matrix sum at q=1 collapses to eq4") {
  // (1-q)^{i-j} vanishes except for i=j, which reverses the eq4 summation
  for (long long m = 0; m <= 6; ++m)
    for (long long k = 0; k <= m; ++k)
      REQUIRE(su::matrix_sum_unreduced(m, k, 1) == su::eq4_sum(m, k));
}
