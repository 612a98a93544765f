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

#include "bhavg/verify.hpp"

#include <cmath>
#include <cstdio>

#include "bhavg/common.hpp"
#include "bhavg/expsum.hpp"
#include "bhavg/local.hpp"
#include "bhavg/oracle.hpp"
#include "bhavg/series.hpp"

namespace bhavg {

VerifySuite parse_verify_suite(const std::string& name) {
  if (name == "local") return VerifySuite::local;
  if (name == "series") return VerifySuite::series;
  if (name == "circle") return VerifySuite::circle;
  if (name == "all") return VerifySuite::all;
  fail(Errc::invalid_argument, "unknown verify suite '" + name + "'");
}

const char* to_string(VerifySuite suite) {
  switch (suite) {
    case VerifySuite::local: return "local";
    case VerifySuite::series: return "series";
    case VerifySuite::circle: return "circle";
    case VerifySuite::all: return "all";
  }
  return "?";
}

namespace {

class Tally {
 public:
  explicit Tally(VerifyResult& r) : r_(r) {}

  template <class... Args>
  void check(bool ok, const char* fmt, Args... args) {
    ++r_.checks;
    if (ok) return;
    if (r_.mismatches++ == 0) {
      if constexpr (sizeof...(Args) == 0) {
        r_.first_failure = fmt;
      } else {
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, args...);
        r_.first_failure = buf;
      }
    }
  }

 private:
  VerifyResult& r_;
};

bool close_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
bool close_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }

void verify_local(VerifyResult& r) {
  Tally t(r);
  const auto primes = sieve_primes(2000);
  for (int ell = 1; ell <= 6; ++ell)
    for (const u64 p : primes)
      for (i64 u = 1; u <= 30; ++u) {
        const PolynomialSpec spec{ell, u};
        const int fast = rho(p, spec);
        const int slow = oracle::rho_bruteforce(p, spec);
        t.check(fast == slow, "rho(p=%llu, ell=%d, u=%lld) = %d, oracle %d", static_cast<unsigned long long>(p), ell,
                static_cast<long long>(u), fast, slow);
      }

  for (int ell = 2; ell <= 3; ++ell)
    for (u64 q = 1; q <= 60; ++q) {
      if (!factorize(q).square_free()) continue;
      for (i64 u = 1; u <= 8; ++u) {
        const PolynomialSpec spec{ell, u};
        const double lam = oracle::lambda_bruteforce(q, spec).real();
        t.check(close_abs(static_cast<double>(lambda_q(q, spec)), lam, 1e-8),
                "lambda(q=%llu, ell=%d, u=%lld) differs from the double sum", static_cast<unsigned long long>(q), ell,
                static_cast<long long>(u));
        const double a = oracle::A_bruteforce(q, spec).real();
        t.check(close_abs(A_q(q, spec).value(), a, 1e-8), "A(q=%llu, ell=%d, u=%lld) differs from the double sum",
                static_cast<unsigned long long>(q), ell, static_cast<long long>(u));
      }
    }

  for (u64 q = 1; q <= 100; ++q)
    for (u64 a = 1; a <= q; ++a) {
      if (gcd(a, q) != 1) continue;
      const std::complex<double> b = gauss_B(q, -static_cast<i64>(a), 1);
      t.check(std::abs(b - static_cast<double>(mobius(q))) <= 1e-9, "B_1(q=%llu, -%llu) != mu(q)",
              static_cast<unsigned long long>(q), static_cast<unsigned long long>(a));
    }
}

void verify_series(const Context& ctx, VerifyResult& r) {
  Tally t(r);
  // Truncated Dirichlet sums against trial-division arithmetic and the double-sum densities.
  for (int ell = 2; ell <= 3; ++ell)
    for (i64 u = 1; u <= 6; ++u) {
      const PolynomialSpec spec{ell, u};
      double s_prime = 0, s = 0;
      for (u64 q = 1; q <= 40; ++q) {
        const int mu = oracle::mobius_trial(q);
        if (mu == 0) continue;
        const double phi = static_cast<double>(oracle::phi_trial(q));
        s_prime += mu * oracle::lambda_bruteforce(q, spec).real() / phi;
        s += mu * oracle::A_bruteforce(q, spec).real() / phi;
      }
      t.check(close_abs(S_prime_trunc(ctx, spec, 40).value, s_prime, 1e-9), "S'(ell=%d, u=%lld, z=40) mismatch", ell,
              static_cast<long long>(u));
      t.check(close_abs(S_trunc(ctx, spec, 40).value, s, 1e-9), "S(ell=%d, u=%lld, z=40) mismatch", ell,
              static_cast<long long>(u));
    }

  for (int ell = 2; ell <= 3; ++ell)
    for (const double cut : {10.0, 100.0})
      for (i64 u = 1; u <= 100; ++u) {
        const PolynomialSpec spec{ell, u};
        const double full = P_trunc(ctx, spec, cut).value;
        const double split = P_prime_trunc(ctx, spec, cut).value * f_factor(ctx, spec, cut);
        t.check(close_rel(full, split, 1e-10), "P != P' f at ell=%d, u=%lld, cutoff=%g", ell,
                static_cast<long long>(u), cut);
      }

  t.check(P_trunc(ctx, {2, 2}, 3).value == 0.0, "sigma(ell=2, u=2) is not exactly zero");
}

void verify_circle(const Context& ctx, VerifyResult& r) {
  Tally t(r);
  for (const double z : {16.0, 50.0})
    for (i64 u = 1; u <= 10; ++u) {
      const PolynomialSpec spec{2, u};
      const double fast = circle_integral(ctx, spec, z);
      const double slow = oracle::convolution_count(spec, z);
      t.check(close_abs(fast, slow, 1e-6), "circle integral (ell=2, u=%lld, z=%g) = %.12g, oracle %.12g",
              static_cast<long long>(u), z, fast, slow);
    }
  const CircleSampler sampler(ctx, 2, 100.0, 1);
  const auto [mean, direct] = sampler.parseval();
  t.check(close_rel(mean, direct, 1e-8), "Parseval at ell=2, z=100: %.12g vs %.12g", mean, direct);

  const auto value = eval_I_ell(ctx, Angle::rational(1, 2), 16, 2).value;
  t.check(std::abs(value) <= 1e-12, "I_2(1/2, 16) is not zero");
}

}  // namespace

VerifyResult run_verify(const Context& ctx, VerifySuite suite) {
  VerifyResult r;
  if (suite == VerifySuite::local || suite == VerifySuite::all) verify_local(r);
  if (suite == VerifySuite::series || suite == VerifySuite::all) verify_series(ctx, r);
  if (suite == VerifySuite::circle || suite == VerifySuite::all) verify_circle(ctx, r);
  return r;
}

}  // namespace bhavg
