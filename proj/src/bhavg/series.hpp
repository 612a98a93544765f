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

#ifndef BHAVG_SERIES_HPP
#define BHAVG_SERIES_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "bhavg/context.hpp"
#include "bhavg/local.hpp"

namespace bhavg {

enum class SeriesMethod {
  dirichlet_sum,            // sum over q <= z of mu(q) c(q) / phi(q)
  euler_product,            // prod over p <= P of (1 - (rho - 1)/(p - 1))
  combined_factor_product,  // the full singular-series factor per prime
};

const char* to_string(SeriesMethod method);

/// A singular-series value at a finite cutoff. The cutoff always travels with
/// the value; there is no "exact" mode.
struct TruncatedValue {
  double value = 0.0;
  SeriesMethod method = SeriesMethod::dirichlet_sum;
  double cutoff = 1.0;
  PolynomialSpec spec;
};

// Factor maps for the three products. Each takes rho(p, u) and whether p | u.
double prime_factor_outer(u64 p, int rho_p, bool p_divides_u);
double prime_factor_combined(u64 p, int rho_p, bool p_divides_u);
double prime_factor_correction(u64 p, int rho_p, bool p_divides_u);

// Reusable evaluator for the truncated Dirichlet-type sums at a fixed z. The
// sums run over square-free q <= z in ascending order.
class DirichletSeries {
 public:
  DirichletSeries(const Context& ctx, double z);

  double z() const noexcept { return z_; }
  double sum_lambda(const PolynomialSpec& spec) const;  // sum mu(q) lambda(q,u) / phi(q)
  double sum_A(const PolynomialSpec& spec) const;       // sum mu(q) A(q,u) / phi(q)

  static constexpr u64 kMaxCutoff = 20'000'000;

 private:
  template <class Term>
  double accumulate(const PolynomialSpec& spec, Term term) const;

  double z_;
  u64 q_max_;
  FactorSieve sieve_;
  std::shared_ptr<const PrimeList> primes_;
};

TruncatedValue S_prime_trunc(const Context& ctx, const PolynomialSpec& spec, double z);
TruncatedValue S_trunc(const Context& ctx, const PolynomialSpec& spec, double z);
TruncatedValue P_prime_trunc(const Context& ctx, const PolynomialSpec& spec, double P);
TruncatedValue P_trunc(const Context& ctx, const PolynomialSpec& spec, double P);

/// f_ell(u, P), the correction with P_trunc = P_prime_trunc * f_factor.
double f_factor(const Context& ctx, const PolynomialSpec& spec, double P);

/// Working approximations to the full singular series: the products at P_cutoff.
TruncatedValue sigma_full(const Context& ctx, const PolynomialSpec& spec, double P_cutoff);
TruncatedValue sigma_prime_full(const Context& ctx, const PolynomialSpec& spec, double P_cutoff);

/// sum_{p <= P} (rho(p, u) - 1) / p.
double rho_deficit_sum(const Context& ctx, const PolynomialSpec& spec, double P);

/// 4 ell log log(2|u|), the growth shape the deficit sum is compared against.
double rho_deficit_shape(const PolynomialSpec& spec);

struct CrudeBoundRow {
  i64 u = 0;
  double sigma = 0.0;
  double sigma_prime = 0.0;
};

struct CrudeBoundReport {
  int ell = 2;
  i64 u_max = 0;
  double cutoff = 0.0;
  std::vector<CrudeBoundRow> rows;
  double max_sigma = 0.0;
  i64 argmax_sigma = 0;
  double max_sigma_prime = 0.0;
  i64 argmax_sigma_prime = 0;
  double log_power_shape = 0.0;  // (log 2 u_max)^(5 ell)
};

CrudeBoundReport crude_bound_report(const Context& ctx, int ell, i64 u_max, double P_cutoff);

}  // namespace bhavg

#endif  // BHAVG_SERIES_HPP
