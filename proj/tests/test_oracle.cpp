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

#include "bhavg/common.hpp"
#include "bhavg/oracle.hpp"

using namespace bhavg;

TEST_CASE("rho by enumeration") {
  CHECK(oracle::rho_bruteforce(5, {2, 1}) == 2);
  for (int ell = 1; ell <= 7; ++ell)
    for (i64 u : {1LL, 3LL, -5LL, 99LL}) CHECK(oracle::rho_bruteforce(2, {ell, u}) == 1);
  CHECK(oracle::rho_bruteforce(13, {4, 1}) == 0);  // fourth powers mod 13 are 1, 3, 9; -1 = 12 is not one
  CHECK_THROWS_AS(oracle::rho_bruteforce(1'000'003, {2, 1}), Error);
}

TEST_CASE("power histogram accounts for every residue") {
  for (u64 p : {2ULL, 3ULL, 7ULL, 101ULL, 997ULL})
    for (int ell = 1; ell <= 6; ++ell) {
      const auto h = oracle::power_histogram(p, ell);
      REQUIRE(h.size() == p);
      CHECK(std::accumulate(h.begin(), h.end(), u64{0}) == p);
      for (u64 r = 0; r < p; ++r) {
        // rho(p, u) counts x with x^ell = -u, i.e. h[-u mod p].
        const i64 u = r == 0 ? static_cast<i64>(p) : static_cast<i64>(p - r);
        REQUIRE(static_cast<int>(h[r]) == oracle::rho_bruteforce(p, {ell, u}));
      }
    }
}

TEST_CASE("double sums") {
  CHECK(oracle::lambda_bruteforce(1, {2, 1}) == std::complex<double>(1, 0));
  CHECK(oracle::A_bruteforce(1, {3, 5}) == std::complex<double>(1, 0));
  CHECK(oracle::A_bruteforce(5, {2, 1}).real() == doctest::Approx(1.5));
  const auto six = oracle::lambda_bruteforce(6, {2, 1}).real();
  const auto two = oracle::lambda_bruteforce(2, {2, 1}).real();
  const auto three = oracle::lambda_bruteforce(3, {2, 1}).real();
  CHECK(six == doctest::Approx(two * three));
  CHECK(std::fabs(oracle::A_bruteforce(77, {3, 2}).imag()) < 1e-8);
  CHECK_THROWS_AS(oracle::A_bruteforce(10'001, {2, 1}), Error);
}

TEST_CASE("trial-division helpers") {
  CHECK(oracle::is_prime_trial(1'000'000'000'039ULL));
  CHECK_FALSE(oracle::is_prime_trial(1));
  CHECK(oracle::lambda_trial(8) == doctest::Approx(std::log(2.0)));
  CHECK(oracle::lambda_trial(12) == 0.0);
  CHECK(oracle::mobius_trial(30) == -1);
  CHECK(oracle::phi_trial(36) == 12);
}

TEST_CASE("convolution examples") {
  CHECK(oracle::convolution_count({2, 1}, 16) == 0.0);
  CHECK(oracle::convolution_count({2, 65}, 16) == 0.0);
  CHECK(oracle::convolution_count({2, 4}, 100) > 0.0);
  CHECK_THROWS_AS(oracle::convolution_count({2, 1}, 3e6), Error);
  const double l2 = std::log(2.0);
  CHECK(oracle::weighted_count({2, 1}, 25) == doctest::Approx(l2 * std::log(5.0) + l2 * std::log(17.0)));
  CHECK(oracle::outer_count({2, 1}, 1) == doctest::Approx(l2));
}
