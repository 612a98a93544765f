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

#include <bhavg/bhavg.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

struct Ctx {
  bhavg_context* p = nullptr;
  explicit Ctx(unsigned threads = 2) { REQUIRE(bhavg_context_create(threads, &p) == BHAVG_OK); }
  ~Ctx() { bhavg_context_destroy(p); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(bhavg_version()).size() > 0);
  CHECK(std::string(bhavg_status_name(BHAVG_RANGE_GUARD)) == "range_guard");
}

TEST_CASE("context lifecycle") {
  Ctx c(3);
  CHECK(bhavg_context_threads(c.p) == 3);
  CHECK(bhavg_context_set_threads(c.p, 1) == BHAVG_OK);
  CHECK(bhavg_context_threads(c.p) == 1);
  CHECK(bhavg_context_set_threads(nullptr, 1) == BHAVG_INVALID_ARGUMENT);
  bhavg_context_destroy(nullptr);
}

TEST_CASE("error reporting") {
  int r = -1;
  CHECK(bhavg_rho(9, 2, 1, &r) == BHAVG_DOMAIN);
  CHECK(std::strstr(bhavg_last_error(), "not prime") != nullptr);
  CHECK(bhavg_rho(5, 2, 1, &r) == BHAVG_OK);
  CHECK(r == 2);
  CHECK(std::string(bhavg_last_error()).empty());
  CHECK(bhavg_rho(5, 0, 1, &r) == BHAVG_INVALID_ARGUMENT);
  CHECK(bhavg_rho(5, 2, 1, nullptr) == BHAVG_INVALID_ARGUMENT);
  int64_t lam = 0;
  CHECK(bhavg_lambda_q(12, 2, 1, &lam) == BHAVG_DOMAIN);
}

TEST_CASE("arithmetic and local densities") {
  int prime = 0;
  CHECK(bhavg_is_prime(1'000'003, &prime) == BHAVG_OK);
  CHECK(prime == 1);
  uint64_t p = 0;
  double w = 0;
  CHECK(bhavg_von_mangoldt(3486784401ULL, &p, &w) == BHAVG_OK);
  CHECK(p == 3);
  CHECK(w == doctest::Approx(std::log(3.0)));
  uint64_t count = 0;
  CHECK(bhavg_prime_count(1'000'000, &count) == BHAVG_OK);
  CHECK(count == 78498);

  int64_t num = 0, den = 0;
  CHECK(bhavg_A_q(5, 2, 1, &num, &den) == BHAVG_OK);
  CHECK(num == 3);
  CHECK(den == 2);
  double re = 0, im = 0;
  CHECK(bhavg_A_bruteforce(5, 2, 1, &re, &im) == BHAVG_OK);
  CHECK(re == doctest::Approx(1.5));
  CHECK(bhavg_gauss_B(7, -3, 1, &re, &im) == BHAVG_OK);
  CHECK(re == doctest::Approx(-1.0));
  int irr = 1;
  CHECK(bhavg_is_irreducible(4, 4, &irr) == BHAVG_OK);
  CHECK(irr == 0);
}

TEST_CASE("series through the C API") {
  Ctx c;
  bhavg_truncated_value v{};
  CHECK(bhavg_series(c.p, BHAVG_SERIES_P_PRIME_TRUNC, 2, 1, 3, &v) == BHAVG_OK);
  CHECK(v.value == doctest::Approx(1.5));
  CHECK(v.method == BHAVG_METHOD_EULER_PRODUCT);
  CHECK(v.cutoff == 3);
  CHECK(bhavg_series(c.p, BHAVG_SERIES_P_TRUNC, 2, 2, 1e4, &v) == BHAVG_OK);
  CHECK(v.value == 0.0);
  CHECK(bhavg_series(c.p, BHAVG_SERIES_S_PRIME_TRUNC, 2, 1, 3e7, &v) == BHAVG_RANGE_GUARD);
  CHECK(bhavg_series(c.p, static_cast<bhavg_series_kind>(9), 2, 1, 3, &v) == BHAVG_INVALID_ARGUMENT);
  double f = 0;
  CHECK(bhavg_f_factor(c.p, 2, 6, 5, &f) == BHAVG_OK);
  CHECK(f == doctest::Approx(2.5));
  double sum = 0, shape = 0;
  CHECK(bhavg_rho_deficit_sum(c.p, 2, 1, 5, &sum, &shape) == BHAVG_OK);
  CHECK(sum == doctest::Approx(-2.0 / 15));
  bhavg_crude_bound_report crude{};
  CHECK(bhavg_crude_bound(c.p, 2, 50, 1e3, &crude) == BHAVG_OK);
  CHECK(crude.argmax_sigma_prime >= 1);
}

TEST_CASE("counts, records and dyadic blocks") {
  Ctx c;
  double v = 0;
  CHECK(bhavg_count(c.p, BHAVG_COUNT_WEIGHTED, 2, 1, 25, &v) == BHAVG_OK);
  CHECK(v == doctest::Approx(std::log(2.0) * (std::log(5.0) + std::log(17.0))));
  CHECK(bhavg_count(c.p, BHAVG_COUNT_OUTER, 3, 1, ~uint64_t{0}, &v) == BHAVG_RANGE_GUARD);
  bhavg_error_record r{};
  CHECK(bhavg_error_record_compute(c.p, BHAVG_COUNT_WEIGHTED, 2, 2, 1'000'000, 1e4, &r) == BHAVG_OK);
  CHECK(r.prediction == 0.0);
  CHECK(r.error == r.count);

  size_t n = 0;
  uint64_t cut = 0;
  CHECK(bhavg_dyadic_blocks(1024, 1.0, 2, nullptr, 0, &n, &cut) == BHAVG_OK);
  CHECK(n == 2);
  CHECK(cut == 147);
  bhavg_dyadic_block blocks[2];
  CHECK(bhavg_dyadic_blocks(1024, 1.0, 2, blocks, 2, &n, &cut) == BHAVG_OK);
  CHECK(blocks[0].lo == 256);
  CHECK(blocks[1].hi == 256);
}

TEST_CASE("variance handle") {
  Ctx c;
  bhavg_variance* v = nullptr;
  REQUIRE(bhavg_variance_run(c.p, BHAVG_COUNT_OUTER, 2, 10, 10'000, 1e3, &v) == BHAVG_OK);
  bhavg_variance_summary s{};
  CHECK(bhavg_variance_summary_get(v, &s) == BHAVG_OK);
  CHECK(s.record_count == 10);
  CHECK(s.variant == BHAVG_COUNT_OUTER);
  double S = 0;
  for (size_t i = 0; i < s.record_count; ++i) {
    bhavg_error_record r{};
    REQUIRE(bhavg_variance_record(v, i, &r) == BHAVG_OK);
    CHECK(r.u == static_cast<int64_t>(i) + 1);
    S += r.error * r.error;
  }
  CHECK(s.S == doctest::Approx(S).epsilon(1e-12));
  bhavg_error_record r{};
  CHECK(bhavg_variance_record(v, 10, &r) == BHAVG_INVALID_ARGUMENT);
  bhavg_variance_destroy(v);

  CHECK(bhavg_variance_run(c.p, BHAVG_COUNT_OUTER, 2, 0, 10'000, 1e3, &v) == BHAVG_INVALID_ARGUMENT);
  CHECK(v == nullptr);
  double ms = -1;
  CHECK(bhavg_meansquare_truncation(c.p, 2, 1, 200, 200, 200, BHAVG_ROUTE_EULER_PRODUCT, &ms) == BHAVG_OK);
  CHECK(ms == 0.0);
  double a = -1, b = -1;
  CHECK(bhavg_product_vs_sum(c.p, 2, 0, 10, &a, &b) == BHAVG_OK);
  CHECK(a == 0.0);
  CHECK(b == 0.0);
}

TEST_CASE("exponential sums, arcs and the circle integral") {
  Ctx c;
  bhavg_complex_value v{};
  CHECK(bhavg_expsum(c.p, BHAVG_EXPSUM_I_ELL, bhavg_angle{1, 2, 0.0}, 16, 2, &v) == BHAVG_OK);
  CHECK(v.re == 0.0);
  CHECK(v.im == 0.0);
  CHECK(v.terms == 4);
  CHECK(bhavg_expsum(c.p, BHAVG_EXPSUM_I, bhavg_angle{0, 0, 0.0}, 16, 2, &v) == BHAVG_INVALID_ARGUMENT);

  bhavg_complex_value r1{}, r2{};
  CHECK(bhavg_major_residual(c.p, 1, 1, 0.0, 1000, 2, &r1, &r2) == BHAVG_OK);
  CHECK(r2.re == 0.0);
  CHECK(bhavg_major_residual(c.p, 4, 2, 0.0, 1000, 2, &r1, &r2) == BHAVG_INVALID_ARGUMENT);

  double ci = 0, conv = 0;
  CHECK(bhavg_circle_integral(c.p, 2, 4, 16, &ci) == BHAVG_OK);
  CHECK(bhavg_convolution_count(2, 4, 16, &conv) == BHAVG_OK);
  CHECK(std::fabs(ci - conv) < 1e-6);
  double mean = 0, direct = 0;
  CHECK(bhavg_parseval(c.p, 2, 200, &mean, &direct) == BHAVG_OK);
  CHECK(mean == doctest::Approx(direct).epsilon(1e-8));

  bhavg_arcs* arcs = nullptr;
  CHECK(bhavg_arcs_build(1000, 3.0, &arcs) == BHAVG_RANGE_GUARD);
  CHECK(arcs == nullptr);
  REQUIRE(bhavg_arcs_build(1'000'000, 1.0, &arcs) == BHAVG_OK);
  bhavg_arcs_info info{};
  CHECK(bhavg_arcs_info_get(arcs, &info) == BHAVG_OK);
  CHECK(info.arc_count == 58);
  bhavg_arc arc{};
  CHECK(bhavg_arcs_get(arcs, 57, &arc) == BHAVG_OK);
  CHECK(arc.q == 1);
  CHECK(bhavg_arcs_get(arcs, 58, &arc) == BHAVG_INVALID_ARGUMENT);
  double m = 0;
  CHECK(bhavg_arcs_measure_direct(arcs, &m) == BHAVG_OK);
  CHECK(m == doctest::Approx(info.measure));
  bhavg_arc_class k{};
  CHECK(bhavg_arcs_classify(arcs, bhavg_angle{2, 7, 0.0}, &k) == BHAVG_OK);
  CHECK(k.major == 1);
  CHECK(k.q == 7);
  CHECK(k.a == 2);
  CHECK(bhavg_arcs_classify(arcs, bhavg_angle{0, 1, 0.123}, &k) == BHAVG_OK);
  CHECK(k.major == 0);
  bhavg_arcs_destroy(arcs);
}

TEST_CASE("verify suites") {
  Ctx c;
  bhavg_verify_result r{};
  CHECK(bhavg_verify(c.p, "local", &r) == BHAVG_OK);
  CHECK(r.checks > 0);
  CHECK(r.mismatches == 0);
  CHECK(r.first_failure[0] == '\0');
  CHECK(bhavg_verify(c.p, "nope", &r) == BHAVG_INVALID_ARGUMENT);
}
