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

#include "bhavg/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bhavg/common.hpp"
#include "bhavg/series.hpp"

namespace bhavg {

Quantiles summarize(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const auto at = [&](double f) {
    const double pos = f * static_cast<double>(values.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    return i + 1 < values.size() ? values[i] + frac * (values[i + 1] - values[i]) : values[i];
  };
  q.min = values.front();
  q.p25 = at(0.25);
  q.median = at(0.5);
  q.p75 = at(0.75);
  q.p90 = at(0.9);
  q.max = values.back();
  CompensatedSum sum;
  for (const double v : values) sum += v;
  q.mean = sum.value() / static_cast<double>(values.size());
  return q;
}

VarianceReport variance(const Context& ctx, int ell, u64 y, u64 X, double sigma_cutoff, CountVariant variant) {
  require(y >= 1, Errc::invalid_argument, "variance: y must be >= 1");
  require(y <= X, Errc::invalid_argument, "variance: y must not exceed X");
  require(y <= static_cast<u64>(std::numeric_limits<i64>::max()), Errc::range_guard, "variance: y too large");
  check_count_guard({ell, static_cast<i64>(y)}, X);

  VarianceReport report;
  report.ell = ell;
  report.y = y;
  report.X = X;
  report.variant = variant;
  report.sigma_cutoff = sigma_cutoff;
  report.records.resize(y);

  // Build the shared tables once, before the workers start reading them.
  ctx.primes(static_cast<u64>(std::floor(std::max(sigma_cutoff, 2.0))));
  ctx.lambda(integer_root(X, static_cast<unsigned>(ell)));

  parallel_for(y, ctx.threads(), [&](std::size_t i) {
    const PolynomialSpec spec{ell, static_cast<i64>(i) + 1};
    const double sigma = variant == CountVariant::weighted ? sigma_full(ctx, spec, sigma_cutoff).value
                                                           : sigma_prime_full(ctx, spec, sigma_cutoff).value;
    report.records[i] = error_record_with_sigma(ctx, spec, X, sigma, variant);
  });

  CompensatedSum all, unobstructed;
  std::vector<double> magnitudes;
  magnitudes.reserve(y);
  for (const ErrorRecord& r : report.records) {
    const double sq = r.error * r.error;
    all += sq;
    if (r.sigma == 0.0)
      ++report.n_obstructed;
    else
      unobstructed += sq;
    magnitudes.push_back(std::fabs(r.error));
  }
  const double scale = std::pow(static_cast<double>(X), 2.0 / ell);
  report.S = all.value();
  report.normalized = report.S / (static_cast<double>(y) * scale);
  report.S_unobstructed = unobstructed.value();
  const u64 n_unobstructed = y - report.n_obstructed;
  report.normalized_unobstructed =
      n_unobstructed == 0 ? 0.0 : report.S_unobstructed / (static_cast<double>(n_unobstructed) * scale);
  report.per_u_quantiles = summarize(std::move(magnitudes));
  return report;
}

VarianceReport variance_S(const Context& ctx, int ell, u64 y, u64 X, double sigma_cutoff) {
  return variance(ctx, ell, y, X, sigma_cutoff, CountVariant::weighted);
}

VarianceReport variance_S_prime(const Context& ctx, int ell, u64 y, u64 X, double sigma_cutoff) {
  return variance(ctx, ell, y, X, sigma_cutoff, CountVariant::outer);
}

double meansquare_truncation(const Context& ctx, int ell, i64 v, u64 y, double z, double ref_cutoff,
                             TruncationRoute route) {
  require(v != 0, Errc::invalid_argument, "meansquare_truncation: v must be nonzero");
  require(z >= 1 && z <= static_cast<double>(y), Errc::invalid_argument, "meansquare_truncation: need 1 <= z <= y");
  i64 top = 0;
  if (y > static_cast<u64>(std::numeric_limits<i64>::max() / 4) ||
      __builtin_mul_overflow(static_cast<i64>(2 * y), v < 0 ? -v : v, &top))
    fail(Errc::range_guard, "meansquare_truncation: n v overflows 64 bits");

  ctx.primes(static_cast<u64>(std::floor(std::max({ref_cutoff, z, 2.0}))));
  const DirichletSeries series(ctx, z);
  std::vector<double> squares(y);
  parallel_for(y, ctx.threads(), [&](std::size_t i) {
    const PolynomialSpec spec{ell, (static_cast<i64>(y) + 1 + static_cast<i64>(i)) * v};
    const double truncated =
        route == TruncationRoute::dirichlet_sum ? series.sum_lambda(spec) : P_prime_trunc(ctx, spec, z).value;
    const double d = truncated - sigma_prime_full(ctx, spec, ref_cutoff).value;
    squares[i] = d * d;
  });
  CompensatedSum sum;
  for (const double s : squares) sum += s;
  return sum.value() / static_cast<double>(y);
}

std::pair<double, double> product_vs_sum_discrepancy(const Context& ctx, int ell, u64 y, double x) {
  require(x >= 2, Errc::invalid_argument, "product_vs_sum_discrepancy: x must be >= 2");
  require(x <= 1e4, Errc::range_guard, "product_vs_sum_discrepancy: x must be <= 10^4");
  if (y == 0) return {0.0, 0.0};
  const DirichletSeries series(ctx, x);
  std::vector<std::pair<double, double>> diffs(y);
  parallel_for(y, ctx.threads(), [&](std::size_t i) {
    const PolynomialSpec spec{ell, static_cast<i64>(i) + 1};
    const double d = P_trunc(ctx, spec, x).value - series.sum_A(spec);
    const double dp = P_prime_trunc(ctx, spec, x).value - series.sum_lambda(spec);
    diffs[i] = {d * d, dp * dp};
  });
  CompensatedSum full, primed;
  for (const auto& [d, dp] : diffs) {
    full += d;
    primed += dp;
  }
  return {full.value(), primed.value()};
}

}  // namespace bhavg
