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
#include <numeric>

#include "bhavg/arith.hpp"
#include "bhavg/common.hpp"
#include "bhavg/context.hpp"
#include "bhavg/oracle.hpp"

using namespace bhavg;

TEST_CASE("sieve_primes small limits") {
  CHECK(sieve_primes(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(sieve_primes(2) == std::vector<std::uint32_t>{2});
  CHECK(sieve_primes(1).empty());
  CHECK(sieve_primes(0).empty());
}

TEST_CASE("sieve_primes matches trial division across segment boundaries") {
  const auto primes = sieve_primes(1'000'000);
  CHECK(primes.size() == 78498);
  std::vector<std::uint32_t> slow;
  for (u64 n = (1 << 18) - 200; n <= (1 << 18) + 200; ++n)
    if (oracle::is_prime_trial(n)) slow.push_back(static_cast<std::uint32_t>(n));
  std::vector<std::uint32_t> fast;
  for (const auto p : primes)
    if (p >= (1 << 18) - 200 && p <= (1 << 18) + 200) fast.push_back(p);
  CHECK(fast == slow);
  CHECK_THROWS_AS(sieve_primes(u64{1} << 32), Error);
}

TEST_CASE("lambda table entries") {
  const LambdaTable t = build_lambda_table(100);
  CHECK(t.base(8) == 2);
  CHECK(t.base(6) == 0);
  CHECK(t.base(49) == 7);
  CHECK(t.base(1) == 0);
  CHECK(t.base(97) == 97);
  CHECK(t.weight(8) == doctest::Approx(std::log(2.0)));
  CHECK(t.weight(100) == 0.0);
  CHECK(t.base(101) == 0);  // outside the table
}

TEST_CASE("lambda table agrees with von_mangoldt_64 and trial division") {
  const LambdaTable t(100'000);
  for (u64 n = 1; n <= 100'000; ++n) {
    const PrimePower pp = von_mangoldt_64(n);
    REQUIRE(pp.p == t.base(n));
    REQUIRE(pp.weight == t.weight(n));
  }
  for (u64 n = 1; n <= 5000; ++n) REQUIRE(t.weight(n) == oracle::lambda_trial(n));
}

TEST_CASE("Chebyshev psi sanity") {
  const LambdaTable t(10'000'000);
  CompensatedSum psi;
  for (u64 n = 1; n <= t.limit(); ++n) psi += t.weight(n);
  CHECK(std::fabs(psi.value() / 1e7 - 1.0) < 0.05);
}

TEST_CASE("is_prime_64") {
  CHECK_FALSE(is_prime_64(0));
  CHECK_FALSE(is_prime_64(1));
  CHECK(is_prime_64(2));
  CHECK(is_prime_64(1'000'003));
  CHECK(is_prime_64(1'000'000'000'039ULL));  // trial division confirms
  CHECK_FALSE(is_prime_64(3215031751ULL));    // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime_64(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime_64(18446744073709551615ULL));
  CHECK_FALSE(is_prime_64(4294967291ULL * 4294967279ULL));
  for (u64 n = 0; n < 20000; ++n) REQUIRE(is_prime_64(n) == oracle::is_prime_trial(n));
  for (u64 n = 1'000'000'000'000ULL; n < 1'000'000'000'300ULL; ++n) REQUIRE(is_prime_64(n) == oracle::is_prime_trial(n));
}

TEST_CASE("von_mangoldt_64") {
  CHECK(von_mangoldt_64(97).p == 97);
  CHECK(von_mangoldt_64(97).weight == doctest::Approx(std::log(97.0)));
  CHECK(von_mangoldt_64(3486784401ULL).p == 3);  // 3^20
  CHECK(von_mangoldt_64(100).p == 0);
  CHECK(von_mangoldt_64(100).weight == 0.0);
  CHECK(von_mangoldt_64(1).p == 0);
  CHECK(von_mangoldt_64(4611686018427387904ULL).p == 2);  // 2^62
  CHECK(von_mangoldt_64(1000003ULL * 1000003ULL).p == 1000003);
  CHECK(von_mangoldt_64(1000003ULL * 1000033ULL).p == 0);
  CHECK(von_mangoldt_64(18446744073709551557ULL).p == 18446744073709551557ULL);
  // 67^2 sits right at the small-prime stripping boundary.
  CHECK(von_mangoldt_64(67 * 67).p == 67);
  CHECK(von_mangoldt_64(67 * 71).p == 0);
}

TEST_CASE("integer roots and checked powers") {
  CHECK(integer_root(0, 2) == 0);
  CHECK(integer_root(24, 2) == 4);
  CHECK(integer_root(25, 2) == 5);
  CHECK(integer_root(26, 2) == 5);
  CHECK(integer_root(18446744073709551615ULL, 2) == 4294967295ULL);
  CHECK(integer_root(3486784401ULL, 20) == 3);
  CHECK(integer_root(3486784400ULL, 20) == 2);
  CHECK(integer_root(1000, 3) == 10);
  CHECK(integer_root(999, 3) == 9);
  CHECK(integer_root(18446744073709551615ULL, 64) == 1);
  u64 out = 0;
  CHECK(checked_pow(10, 19, out));
  CHECK(out == 10'000'000'000'000'000'000ULL);
  CHECK_FALSE(checked_pow(10, 20, out));
}

TEST_CASE("multiplicative functions") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(euler_phi(10) == 4);
  CHECK(euler_phi(1) == 1);
  for (u64 n = 1; n <= 3000; ++n) {
    REQUIRE(mobius(n) == oracle::mobius_trial(n));
    REQUIRE(euler_phi(n) == oracle::phi_trial(n));
  }
  CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("factorize reconstructs n") {
  for (u64 n : {1ULL, 2ULL, 360ULL, 999999937ULL, 600851475143ULL, 1000000000039ULL * 3ULL, 18446744073709551615ULL}) {
    const FactoredInteger f = factorize(n);
    u64 prod = 1;
    u64 last = 0;
    for (const auto& [p, e] : f.factors) {
      CHECK(p > last);
      CHECK(is_prime_64(p));
      last = p;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
  CHECK(factorize(30).square_free());
  CHECK_FALSE(factorize(12).square_free());
  CHECK(factorize(30).omega() == 3);
}

TEST_CASE("factor sieve") {
  const FactorSieve s(10000);
  for (u64 n = 1; n <= 10000; ++n) REQUIRE(s.factor(n).factors == factorize(n).factors);
  CHECK_THROWS_AS(s.factor(10001), Error);
}

TEST_CASE("jacobi symbol against Euler's criterion") {
  for (u64 p : {3ULL, 5ULL, 7ULL, 101ULL, 65537ULL})
    for (i64 a = -50; a <= 50; ++a) {
      const u64 r = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
      const u64 e = powmod(r, (p - 1) / 2, p);
      const int expect = r == 0 ? 0 : (e == 1 ? 1 : -1);
      REQUIRE(jacobi(a, p) == expect);
    }
}

TEST_CASE("context tables grow and are shared") {
  Context ctx(2);
  const auto a = ctx.primes(100);
  CHECK(a->up_to(10).size() == 4);
  const auto b = ctx.primes(50);
  CHECK(a.get() == b.get());
  const auto c = ctx.lambda(1000);
  CHECK(c->limit() >= 1000);
  CHECK(c->base(1000) == 0);
  CHECK(c->base(997) == 997);
  CHECK_THROWS_AS(ctx.lambda(Context::kMaxLambdaLimit + 1), Error);
}

TEST_CASE("parallel_for is deterministic and propagates errors") {
  std::vector<int> out(1000);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i % 97); });
  std::vector<int> ref(1000);
  for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = static_cast<int>(i * i % 97);
  CHECK(out == ref);
  CHECK_THROWS_AS(parallel_for(100, 3, [](std::size_t i) {
                    if (i == 57) fail(Errc::internal, "boom");
                  }),
                  Error);
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s += 1e16;
  for (int i = 0; i < 1000; ++i) s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1000.0);
}
