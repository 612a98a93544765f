/*
  Copyright 2026 The bhavg Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bhavg/arith.hpp"
#include "bhavg/common.hpp"
#include "bhavg/local.hpp"
#include "bhavg/oracle.hpp"

using namespace bhavg;

TEST_CASE("rho examples") {
  CHECK(rho(3, {2, 1}) == 0);
  CHECK(rho(5, {2, 1}) == 2);
  CHECK(rho(7, {3, 7}) == 1);
  CHECK(rho(2, {5, 3}) == 1);
  CHECK(rho(13, {4, 1}) == oracle::rho_bruteforce(13, {4, 1}));
  CHECK_THROWS_AS(rho(9, {2, 1}), Error);
  CHECK_THROWS_AS(rho(5, {0, 1}), Error);
  CHECK_THROWS_AS(rho(5, {2, 0}), Error);
}

TEST_CASE("rho paths agree with enumeration, negative u included") {
  for (const std::uint32_t p : sieve_primes(3000))
    for (int ell = 1; ell <= 6; ++ell)
      for (i64 u = -100; u <= 100; ++u) {
        if (u == 0) continue;
        const PolynomialSpec spec{ell, u};
        const int slow = oracle::rho_bruteforce(p, spec);
        REQUIRE(rho_unchecked(p, spec) == slow);
        if (p > 2 && u % static_cast<i64>(p) != 0) REQUIRE(rho_power_residue(p, spec) == slow);
        if (p <= 64) REQUIRE(rho_enumerate(p, spec) == slow);
      }
}

TEST_CASE("rho for large primes and large shifts") {
  const u64 p = 1'000'000'007ULL;
  // x^2 + 1: -1 is a residue iff p = 1 mod 4.
  CHECK(rho(p, {2, 1}) == (p % 4 == 1 ? 2 : 0));
  // Cubing is a bijection when 3 does not divide p - 1; otherwise 0 or 3 roots.
  const u64 p3 = 1'000'000'009ULL;
  for (i64 u = 1; u < 30; ++u) {
    CHECK(rho(p, {3, u}) == 1);
    const int r = rho(p3, {3, u});
    CHECK((r == 0 || r == 3));
    CHECK(r == (powmod(p3 - static_cast<u64>(u), (p3 - 1) / 3, p3) == 1 ? 3 : 0));
  }
  CHECK(rho(999983, {6, 1'000'000'000'000LL}) == oracle::rho_bruteforce(999983, {6, 1'000'000'000'000LL}));
}

TEST_CASE("lambda_q examples") {
  CHECK(lambda_q(1, {2, 1}) == 1);
  CHECK(lambda_q(15, {2, 1}) == -1);
  CHECK(lambda_q(5, {2, 1}) == 1);
  CHECK_THROWS_AS(lambda_q(12, {2, 1}), Error);
}

TEST_CASE("A_q examples") {
  CHECK(A_q(1, {2, 1}) == Rational{1, 1});
  CHECK(A_q(5, {2, 1}) == Rational{3, 2});
  CHECK(A_q(2, {2, 2}) == Rational{-1, 1});
  CHECK_THROWS_AS(A_q(18, {2, 1}), Error);
  CHECK(A_prime_numerator(5, 2, false) == 6);
  CHECK(A_prime_numerator(2, 1, true) == -1);
}

TEST_CASE("lambda_q and A_q match the defining double sums") {
  for (int ell = 2; ell <= 4; ++ell)
    for (u64 q = 1; q <= 120; ++q) {
      if (!factorize(q).square_free()) continue;
      for (i64 u = 1; u <= 12; ++u) {
        const PolynomialSpec spec{ell, u};
        const auto lam = oracle::lambda_bruteforce(q, spec);
        const auto a = oracle::A_bruteforce(q, spec);
        REQUIRE(std::fabs(lam.imag()) < 1e-8);
        REQUIRE(std::fabs(a.imag()) < 1e-8);
        REQUIRE(std::fabs(static_cast<double>(lambda_q(q, spec)) - lam.real()) < 1e-8);
        REQUIRE(std::fabs(A_q(q, spec).value() - a.real()) < 1e-8);
      }
    }
}

TEST_CASE("lambda_q and A_q are multiplicative") {
  for (i64 u = 1; u <= 20; ++u) {
    const PolynomialSpec spec{3, u};
    for (u64 q1 : {1ULL, 2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
      for (u64 q2 : {1ULL, 17ULL, 19ULL, 23ULL, 6ULL, 35ULL}) {
        if (gcd(q1, q2) != 1) continue;
        CHECK(lambda_q(q1 * q2, spec) == lambda_q(q1, spec) * lambda_q(q2, spec));
        const Rational a = A_q(q1, spec), b = A_q(q2, spec);
        CHECK(A_q(q1 * q2, spec) == make_rational(a.num * b.num, a.den * b.den));
      }
  }
}

TEST_CASE("rationals are normalised") {
  CHECK(make_rational(6, -4) == Rational{-3, 2});
  CHECK(make_rational(0, 7) == Rational{0, 1});
  CHECK_THROWS_AS(make_rational(1, 0), Error);
}

TEST_CASE("Gauss sums") {
  CHECK(std::abs(gauss_Bprime(1, 5, 3) - std::complex<double>(1, 0)) < 1e-12);
  for (u64 q = 1; q <= 200; ++q)
    for (u64 a = 1; a <= q; ++a) {
      if (gcd(a, q) != 1) continue;
      REQUIRE(std::abs(gauss_B(q, -static_cast<i64>(a), 1) - static_cast<double>(mobius(q))) < 1e-9);
    }
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 31ULL})
    for (int ell = 1; ell <= 4; ++ell)
      for (i64 a = 1; a < static_cast<i64>(p); ++a)
        REQUIRE(std::abs(gauss_Bprime(p, a, ell) - gauss_B(p, a, ell) - 1.0) < 1e-9);
  // Quadratic Gauss sum over all residues has modulus sqrt(p).
  CHECK(std::abs(gauss_Bprime(101, 1, 2)) == doctest::Approx(std::sqrt(101.0)));
}

TEST_CASE("irreducibility of x^ell + u") {
  CHECK(is_irreducible({2, 1}));
  CHECK_FALSE(is_irreducible({4, 4}));
  CHECK_FALSE(is_irreducible({3, -8}));
  CHECK_FALSE(is_irreducible({2, -9}));
  CHECK(is_irreducible({2, -2}));
  CHECK(is_irreducible({1, 7}));
  CHECK_FALSE(is_irreducible({6, 8}));     // x^6 + 8 = (x^2)^3 + 2^3
  CHECK_FALSE(is_irreducible({4, 324}));   // 324 = 4 * 3^4
  CHECK(is_irreducible({4, 2}));
  CHECK(is_irreducible({3, 2}));
}

TEST_CASE("x^4 + 4 factors as stated") {
  // (x^2 + 2x + 2)(x^2 - 2x + 2) expanded with integer arithmetic.
  const i64 f[3] = {2, 2, 1}, g[3] = {2, -2, 1};
  i64 prod[5] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) prod[i + j] += f[i] * g[j];
  CHECK(prod[0] == 4);
  CHECK(prod[1] == 0);
  CHECK(prod[2] == 0);
  CHECK(prod[3] == 0);
  CHECK(prod[4] == 1);
}

TEST_CASE("density mass over residue classes") {
  for (const std::uint32_t p : sieve_primes(2000))
    for (int ell = 1; ell <= 6; ++ell) {
      u64 total = rho(p, {ell, static_cast<i64>(p)});  // the class u = 0 mod p
      for (i64 u = 1; u < static_cast<i64>(p); ++u) total += rho_unchecked(p, {ell, u});
      REQUIRE(total == p);
    }
}
