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

#include "bhavg/common.hpp"
#include "bhavg/counts.hpp"
#include "bhavg/local.hpp"
#include "bhavg/oracle.hpp"
#include "bhavg/series.hpp"

using namespace bhavg;

namespace {
Context& ctx() {
  static Context c(2);
  return c;
}
const double l2 = std::log(2.0), l5 = std::log(5.0), l17 = std::log(17.0);
}  // namespace

TEST_CASE("weighted count examples") {
  CHECK(count_weighted(ctx(), {2, 1}, 25) == doctest::Approx(l2 * l5 + l2 * l17).epsilon(1e-14));
  CHECK(count_weighted(ctx(), {2, 1}, 1) == 0.0);
  CHECK(count_weighted(ctx(), {3, 1}, 1000) == doctest::Approx(oracle::weighted_count({3, 1}, 1000)).epsilon(1e-14));
}

TEST_CASE("outer count examples") {
  CHECK(count_outer(ctx(), {2, 1}, 25) == doctest::Approx(l2 + l5 + l17).epsilon(1e-14));
  CHECK(count_outer(ctx(), {2, 1}, 1) == doctest::Approx(l2));
  // x^4 + 4 is reducible; only m = 1 gives a prime power.
  CHECK_FALSE(is_irreducible({4, 4}));
  CHECK(count_outer(ctx(), {4, 4}, 10000) == doctest::Approx(l5));
}

TEST_CASE("counts agree with the oracle") {
  for (int ell = 1; ell <= 4; ++ell)
    for (i64 u = 1; u <= 25; ++u)
      for (u64 X : {1ULL, 2ULL, 100ULL, 4097ULL, 250000ULL}) {
        const PolynomialSpec spec{ell, u};
        if (ell == 1 && X > 4097) continue;
        REQUIRE(count_weighted(ctx(), spec, X) ==
                doctest::Approx(oracle::weighted_count(spec, X)).epsilon(1e-12));
        REQUIRE(count_outer(ctx(), spec, X) == doctest::Approx(oracle::outer_count(spec, X)).epsilon(1e-12));
      }
}

TEST_CASE("count guards") {
  CHECK_THROWS_AS(count_weighted(ctx(), {2, -1}, 100), Error);
  CHECK_THROWS_AS(count_weighted(ctx(), {2, 1}, 0), Error);
  try {
    count_outer(ctx(), {3, 1}, ~u64{0});
    FAIL("expected a range guard");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::range_guard);
  }
}

TEST_CASE("error records") {
  const ErrorRecord r = error_record(ctx(), {2, 2}, 1'000'000, 1e4);
  CHECK(r.prediction == 0.0);
  CHECK(r.sigma == 0.0);
  CHECK(r.error == r.count);
  CHECK(r.count > 0.0);
  CHECK(r.m_count == 1000);

  const ErrorRecord one = error_record(ctx(), {2, 1}, 1, 1e3);
  CHECK(one.count == 0.0);
  CHECK(one.m_count == 1);
  CHECK(one.prediction == one.sigma);
  CHECK(one.error == -one.prediction);

  const ErrorRecord outer = error_record(ctx(), {2, 1}, 10'000, 1e4, CountVariant::outer);
  CHECK(outer.sigma == doctest::Approx(P_prime_trunc(ctx(), {2, 1}, 1e4).value));
  CHECK(outer.prediction == doctest::Approx(outer.sigma * 100));
  CHECK(outer.error == outer.count - outer.prediction);
}

TEST_CASE("dyadic blocks cover the range once") {
  const DyadicCover c = dyadic_blocks(1024, 1.0, 2);  // cut = floor(1024 / log 1024) = 147
  CHECK(c.cut == 147);
  REQUIRE(c.blocks.size() == 2);
  CHECK(c.blocks[0].lo == 256);
  CHECK(c.blocks[0].hi == 1024);
  CHECK(c.blocks[1].lo == 147);
  CHECK(c.blocks[1].hi == 256);

  const DyadicCover deep = dyadic_blocks(1024, 3.0, 2);
  CHECK(deep.cut < 4);
  REQUIRE(deep.blocks.size() >= 4);
  CHECK(deep.blocks[1].lo == 64);
  CHECK(deep.blocks[2].lo == 16);
  CHECK(deep.blocks[3].lo == 4);

  for (int ell = 1; ell <= 3; ++ell)
    for (double B : {0.5, 1.0, 2.0, 4.0})
      for (u64 X : {1000ULL, 123456ULL, 10'000'000ULL}) {
        const DyadicCover d = dyadic_blocks(X, B, ell);
        u64 hi = X;
        for (const auto& b : d.blocks) {
          REQUIRE(b.hi == hi);
          REQUIRE(b.lo < b.hi);
          hi = b.lo;
        }
        CHECK(hi == d.cut);
        const double L = std::log(static_cast<double>(X));
        const double expect = std::ceil(B * std::log(L) / (ell * std::log(2.0)));
        if (d.cut >= 1) CHECK(std::fabs(static_cast<double>(d.blocks.size()) - expect) <= 1.0);
      }
}

TEST_CASE("block counts rearrange to the full count") {
  for (int ell = 2; ell <= 3; ++ell)
    for (i64 u : {1LL, 2LL, 7LL}) {
      const PolynomialSpec spec{ell, u};
      const u64 X = 2'000'000;
      const DyadicCover d = dyadic_blocks(X, 2.0, ell);
      double total = count_weighted(ctx(), spec, d.cut);
      double outer = count_outer(ctx(), spec, d.cut);
      for (const auto& b : d.blocks) {
        total += count_weighted_range(ctx(), spec, b.lo, b.hi);
        outer += count_outer_range(ctx(), spec, b.lo, b.hi);
      }
      CHECK(total == doctest::Approx(count_weighted(ctx(), spec, X)).epsilon(1e-12));
      CHECK(outer == doctest::Approx(count_outer(ctx(), spec, X)).epsilon(1e-12));
    }
  CHECK(count_weighted_range(ctx(), {2, 1}, 10, 10) == 0.0);
}
