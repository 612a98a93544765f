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

#include "bhavg/series.hpp"

#include <cmath>
#include <string>

#include "bhavg/common.hpp"

namespace bhavg {

const char* to_string(SeriesMethod method) {
  switch (method) {
    case SeriesMethod::dirichlet_sum: return "dirichlet-sum";
    case SeriesMethod::euler_product: return "euler-product";
    case SeriesMethod::combined_factor_product: return "combined-factor-product";
  }
  return "unknown";
}

double prime_factor_outer(u64 p, int rho_p, bool /*p_divides_u*/) {
  const double pm1 = static_cast<double>(p - 1);
  return 1.0 - (rho_p - 1) / pm1;
}

double prime_factor_combined(u64 p, int rho_p, bool p_divides_u) {
  const double pd = static_cast<double>(p);
  // (p - rho)/(p - 1 - rho) * (1 - 1/(p-1)^2) with rho = 1 collapses to p/(p-1);
  // the unsimplified form is 0/0 at p = 2.
  if (p_divides_u) return pd / (pd - 1.0);
  const double pm1 = pd - 1.0;
  return 1.0 - (rho_p - 1) / pm1 - rho_p / (pm1 * pm1);
}

double prime_factor_correction(u64 p, int rho_p, bool p_divides_u) {
  const double pd = static_cast<double>(p);
  const double pm1 = pd - 1.0;
  if (static_cast<u64>(rho_p) == p)
    fail(Errc::singular_factor, "f_factor: p - rho vanishes at p = " + std::to_string(p));
  const double tail = 1.0 - rho_p / (pm1 * (pd - rho_p));
  if (!p_divides_u) return tail;
  if (p == 2) return pd / pm1;  // (1 - 1/(p - rho))^{-1} is 1/0 here
  return tail / (1.0 - 1.0 / (pd - rho_p));
}

namespace {

u64 floor_cutoff(double x, const char* who) {
  if (!(x >= 1.0) || !std::isfinite(x)) fail(Errc::invalid_argument, std::string(who) + ": cutoff must be >= 1");
  return static_cast<u64>(std::floor(x));
}

u64 dirichlet_cutoff(double z) {
  const u64 q_max = floor_cutoff(z, "dirichlet sum");
  if (q_max > DirichletSeries::kMaxCutoff) fail(Errc::range_guard, "dirichlet sum cutoff exceeds 2*10^7");
  return q_max;
}

bool divides(u64 p, i64 u) { return u % static_cast<i64>(p) == 0; }

// Products of per-prime factors; switches to log space beyond 10^6 factors.
template <class Factor>
double prime_product(const Context& ctx, const PolynomialSpec& spec, double P, const char* who, Factor factor) {
  spec.validate();
  if (!(P >= 2.0)) fail(Errc::invalid_argument, std::string(who) + ": cutoff P must be >= 2");
  const u64 top = floor_cutoff(P, who);
  const auto table = ctx.primes(top);
  const auto primes = table->up_to(top);
  if (primes.size() <= 1'000'000) {
    double product = 1.0;
    for (const std::uint32_t p : primes) product *= factor(p, rho_unchecked(p, spec), divides(p, spec.u));
    return product;
  }
  CompensatedSum log_sum;
  double sign = 1.0;
  for (const std::uint32_t p : primes) {
    const double f = factor(p, rho_unchecked(p, spec), divides(p, spec.u));
    if (f == 0.0) return 0.0;
    if (f < 0) sign = -sign;
    log_sum += std::log(std::fabs(f));
  }
  return sign * std::exp(log_sum.value());
}

}  // namespace

DirichletSeries::DirichletSeries(const Context& ctx, double z)
    : z_(z),
      q_max_(dirichlet_cutoff(z)),
      sieve_(q_max_),
      primes_(ctx.primes(std::max<u64>(q_max_, 2))) {}

template <class Term>
double DirichletSeries::accumulate(const PolynomialSpec& spec, Term term) const {
  spec.validate();
  // Per-prime numerator c(p); square-free q then contributes prod(-c(p)).
  std::vector<i64> numerators(q_max_ + 1, 0);
  for (const std::uint32_t p : primes_->up_to(q_max_))
    numerators[p] = term.numerator(p, rho_unchecked(p, spec), divides(p, spec.u));

  CompensatedSum total;
  total += 1.0;
  for (u64 q = 2; q <= q_max_; ++q) {
    u64 n = q;
    i64 num = 1;
    i64 phi = 1;
    bool square_free = true;
    while (n > 1) {
      const u64 p = sieve_.smallest_factor(n);
      n /= p;
      if (n % p == 0) {
        square_free = false;
        break;
      }
      if (__builtin_mul_overflow(num, -numerators[p], &num))
        fail(Errc::range_guard, "dirichlet term numerator overflows 64 bits");
      phi *= static_cast<i64>(p - 1);
    }
    if (square_free && num != 0) total += term.value(num, phi);
  }
  return total.value();
}

namespace {

struct LambdaTerm {
  static i64 numerator(u64, int rho_p, bool) { return rho_p - 1; }
  static double value(i64 num, i64 phi) { return static_cast<double>(num) / static_cast<double>(phi); }
};

struct ATerm {
  static i64 numerator(u64 p, int rho_p, bool p_divides_u) { return A_prime_numerator(p, rho_p, p_divides_u); }
  // mu(q) A(q) / phi(q) = prod(-a_p) / phi(q)^2, phi(q)^2 is exact in double below 2^53.
  static double value(i64 num, i64 phi) {
    const double d = static_cast<double>(phi);
    return static_cast<double>(num) / (d * d);
  }
};

}  // namespace

double DirichletSeries::sum_lambda(const PolynomialSpec& spec) const { return accumulate(spec, LambdaTerm{}); }

double DirichletSeries::sum_A(const PolynomialSpec& spec) const { return accumulate(spec, ATerm{}); }

TruncatedValue S_prime_trunc(const Context& ctx, const PolynomialSpec& spec, double z) {
  return {DirichletSeries(ctx, z).sum_lambda(spec), SeriesMethod::dirichlet_sum, z, spec};
}

TruncatedValue S_trunc(const Context& ctx, const PolynomialSpec& spec, double z) {
  return {DirichletSeries(ctx, z).sum_A(spec), SeriesMethod::dirichlet_sum, z, spec};
}

TruncatedValue P_prime_trunc(const Context& ctx, const PolynomialSpec& spec, double P) {
  return {prime_product(ctx, spec, P, "P_prime_trunc", prime_factor_outer), SeriesMethod::euler_product, P, spec};
}

TruncatedValue P_trunc(const Context& ctx, const PolynomialSpec& spec, double P) {
  return {prime_product(ctx, spec, P, "P_trunc", prime_factor_combined), SeriesMethod::combined_factor_product, P,
          spec};
}

double f_factor(const Context& ctx, const PolynomialSpec& spec, double P) {
  return prime_product(ctx, spec, P, "f_factor", prime_factor_correction);
}

TruncatedValue sigma_full(const Context& ctx, const PolynomialSpec& spec, double P_cutoff) {
  return P_trunc(ctx, spec, P_cutoff);
}

TruncatedValue sigma_prime_full(const Context& ctx, const PolynomialSpec& spec, double P_cutoff) {
  return P_prime_trunc(ctx, spec, P_cutoff);
}

double rho_deficit_sum(const Context& ctx, const PolynomialSpec& spec, double P) {
  spec.validate();
  if (!(P >= 0) || !std::isfinite(P)) fail(Errc::invalid_argument, "rho_deficit_sum: cutoff must be finite");
  if (P < 2) return 0.0;
  const u64 top = static_cast<u64>(std::floor(P));
  const auto table = ctx.primes(top);
  CompensatedSum sum;
  for (const std::uint32_t p : table->up_to(top))
    sum += (rho_unchecked(p, spec) - 1) / static_cast<double>(p);
  return sum.value();
}

double rho_deficit_shape(const PolynomialSpec& spec) {
  spec.validate();
  const double a = std::fabs(static_cast<double>(spec.u));
  return 4.0 * spec.ell * std::log(std::log(2.0 * a));
}

CrudeBoundReport crude_bound_report(const Context& ctx, int ell, i64 u_max, double P_cutoff) {
  require(u_max >= 1, Errc::invalid_argument, "crude_bound_report: u_max must be >= 1");
  CrudeBoundReport report;
  report.ell = ell;
  report.u_max = u_max;
  report.cutoff = P_cutoff;
  report.rows.resize(static_cast<std::size_t>(u_max));
  ctx.primes(static_cast<u64>(std::floor(std::max(P_cutoff, 2.0))));
  parallel_for(report.rows.size(), ctx.threads(), [&](std::size_t i) {
    const PolynomialSpec spec{ell, static_cast<i64>(i) + 1};
    report.rows[i] = {spec.u, sigma_full(ctx, spec, P_cutoff).value, sigma_prime_full(ctx, spec, P_cutoff).value};
  });
  report.max_sigma = report.rows.front().sigma;
  report.argmax_sigma = 1;
  report.max_sigma_prime = report.rows.front().sigma_prime;
  report.argmax_sigma_prime = 1;
  for (const auto& row : report.rows) {
    if (row.sigma > report.max_sigma) {
      report.max_sigma = row.sigma;
      report.argmax_sigma = row.u;
    }
    if (row.sigma_prime > report.max_sigma_prime) {
      report.max_sigma_prime = row.sigma_prime;
      report.argmax_sigma_prime = row.u;
    }
  }
  report.log_power_shape = std::pow(std::log(2.0 * static_cast<double>(u_max)), 5.0 * ell);
  return report;
}

}  // namespace bhavg
