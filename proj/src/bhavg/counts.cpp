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

#include "bhavg/counts.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bhavg/common.hpp"
#include "bhavg/series.hpp"

namespace bhavg {

const char* to_string(CountVariant variant) {
  return variant == CountVariant::weighted ? "weighted" : "outer";
}

void check_count_guard(const PolynomialSpec& spec, u64 X) {
  spec.validate();
  require(spec.u >= 1, Errc::invalid_argument, "counts require u >= 1");
  require(X >= 1, Errc::invalid_argument, "counts require X >= 1");
  const u64 m_max = integer_root(X, static_cast<unsigned>(spec.ell));
  u64 top = 0;
  const u64 limit = u64{1} << 63;
  if (!checked_pow(m_max, static_cast<unsigned>(spec.ell), top) || top >= limit ||
      static_cast<u64>(spec.u) >= limit - top)
    fail(Errc::range_guard, "m^ell + u must stay below 2^63 (X = " + std::to_string(X) +
                                ", u = " + std::to_string(spec.u) + ")");
  if (m_max > Context::kMaxLambdaLimit)
    fail(Errc::range_guard, "X^(1/ell) exceeds the von Mangoldt table limit");
}

namespace {

u64 power_of(u64 m, int ell) {
  u64 v = 0;
  checked_pow(m, static_cast<unsigned>(ell), v);
  return v;
}

// m range with lo < m^ell <= hi.
std::pair<u64, u64> base_range(u64 lo, u64 hi, int ell) {
  const auto e = static_cast<unsigned>(ell);
  return {integer_root(lo, e) + 1, integer_root(hi, e)};
}

}  // namespace

double count_weighted_range(const Context& ctx, const PolynomialSpec& spec, u64 lo, u64 hi) {
  spec.validate();
  if (hi <= lo) return 0.0;
  check_count_guard(spec, hi);
  const auto [m_lo, m_hi] = base_range(lo, hi, spec.ell);
  const auto table = ctx.lambda(m_hi);
  CompensatedSum sum;
  for (u64 m = std::max<u64>(m_lo, 2); m <= m_hi; ++m) {
    const std::uint32_t p = table->base(m);
    if (p == 0) continue;
    const PrimePower v = von_mangoldt_64(power_of(m, spec.ell) + static_cast<u64>(spec.u));
    if (v.p != 0) sum += std::log(static_cast<double>(p)) * v.weight;
  }
  return sum.value();
}

double count_outer_range(const Context& /*ctx*/, const PolynomialSpec& spec, u64 lo, u64 hi) {
  spec.validate();
  if (hi <= lo) return 0.0;
  check_count_guard(spec, hi);
  const auto [m_lo, m_hi] = base_range(lo, hi, spec.ell);
  CompensatedSum sum;
  for (u64 m = std::max<u64>(m_lo, 1); m <= m_hi; ++m) {
    const PrimePower v = von_mangoldt_64(power_of(m, spec.ell) + static_cast<u64>(spec.u));
    if (v.p != 0) sum += v.weight;
  }
  return sum.value();
}

double count_weighted(const Context& ctx, const PolynomialSpec& spec, u64 X) {
  check_count_guard(spec, X);
  return count_weighted_range(ctx, spec, 0, X);
}

double count_outer(const Context& ctx, const PolynomialSpec& spec, u64 X) {
  check_count_guard(spec, X);
  return count_outer_range(ctx, spec, 0, X);
}

ErrorRecord error_record_with_sigma(const Context& ctx, const PolynomialSpec& spec, u64 X, double sigma,
                                    CountVariant variant) {
  ErrorRecord r;
  r.spec = spec;
  r.X = X;
  r.count = variant == CountVariant::weighted ? count_weighted(ctx, spec, X) : count_outer(ctx, spec, X);
  r.sigma = sigma;
  r.m_count = integer_root(X, static_cast<unsigned>(spec.ell));
  r.prediction = sigma * static_cast<double>(r.m_count);
  r.error = r.count - r.prediction;
  return r;
}

ErrorRecord error_record(const Context& ctx, const PolynomialSpec& spec, u64 X, double sigma_cutoff,
                         CountVariant variant) {
  check_count_guard(spec, X);
  const double sigma = variant == CountVariant::weighted ? sigma_full(ctx, spec, sigma_cutoff).value
                                                         : sigma_prime_full(ctx, spec, sigma_cutoff).value;
  return error_record_with_sigma(ctx, spec, X, sigma, variant);
}

DyadicCover dyadic_blocks(u64 X, double B, int ell) {
  require(ell >= 1 && ell < 63, Errc::invalid_argument, "dyadic_blocks: ell out of range");
  require(X >= (u64{1} << ell), Errc::invalid_argument, "dyadic_blocks: X must be >= 2^ell");
  require(B >= 0 && std::isfinite(B), Errc::invalid_argument, "dyadic_blocks: B must be >= 0");
  DyadicCover cover;
  cover.X = X;
  cover.ell = ell;
  cover.B = B;
  const double L = std::log(static_cast<double>(X));
  const double cut_real = static_cast<double>(X) * std::pow(L, -B);
  cover.cut = cut_real >= static_cast<double>(X) ? X : static_cast<u64>(std::floor(cut_real));

  const u64 step = u64{1} << ell;
  u64 hi = X;
  double z = static_cast<double>(X);
  while (hi > cover.cut) {
    const u64 lo = hi / step;
    z /= static_cast<double>(step);
    if (lo <= cover.cut) {
      cover.blocks.push_back({cover.cut, hi, z});
      break;
    }
    cover.blocks.push_back({lo, hi, z});
    hi = lo;
  }
  return cover;
}

}  // namespace bhavg
