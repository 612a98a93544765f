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

#include "bhavg/oracle.hpp"

#include <cmath>
#include <numbers>

#include "bhavg/common.hpp"

namespace bhavg::oracle {

namespace {

u64 mod_of(i64 v, u64 m) {
  const i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 slow_power(u64 x, int ell, u64 m) {
  u64 acc = 1 % m;
  for (int i = 0; i < ell; ++i) acc = static_cast<u64>(static_cast<unsigned __int128>(acc) * x % m);
  return acc;
}

u64 ipow(u64 m, int ell) {
  u64 acc = 1;
  for (int i = 0; i < ell; ++i) acc *= m;
  return acc;
}

u64 slow_gcd(u64 a, u64 b) {
  while (b) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::complex<double> root(u64 k, u64 q) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % q) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

// Literal double sum; shared by lambda and A.
std::complex<double> double_sum(u64 q, const PolynomialSpec& spec, bool h_units_only) {
  require(q >= 1 && q <= kMaxModulus, Errc::range_guard, "oracle double sum: q outside [1, 10^4]");
  std::vector<std::complex<double>> roots(q);
  for (u64 k = 0; k < q; ++k) roots[k] = root(k, q);
  const u64 ur = mod_of(spec.u, q);
  std::complex<double> total = 0;
  for (u64 h = 0; h < q; ++h) {
    if (h_units_only && slow_gcd(h, q) != 1) continue;
    const u64 value = (slow_power(h, spec.ell, q) + ur) % q;
    std::complex<double> inner = 0;
    for (u64 a = 1; a <= q; ++a)
      if (slow_gcd(a, q) == 1) inner += roots[(a * value) % q];
    total += inner;
  }
  return total;
}

}  // namespace

int rho_bruteforce(u64 p, const PolynomialSpec& spec) {
  require(p >= 2 && p <= kMaxRhoPrime, Errc::range_guard, "rho_bruteforce: p outside [2, 10^6]");
  const u64 target = mod_of(-spec.u, p);
  int count = 0;
  for (u64 x = 0; x < p; ++x)
    if (slow_power(x, spec.ell, p) == target) ++count;
  return count;
}

std::vector<std::uint32_t> power_histogram(u64 p, int ell) {
  require(p >= 2 && p <= kMaxRhoPrime, Errc::range_guard, "power_histogram: p outside [2, 10^6]");
  std::vector<std::uint32_t> counts(p, 0);
  for (u64 x = 0; x < p; ++x) ++counts[slow_power(x, ell, p)];
  return counts;
}

std::complex<double> lambda_bruteforce(u64 q, const PolynomialSpec& spec) {
  return double_sum(q, spec, false) / static_cast<double>(q);
}

std::complex<double> A_bruteforce(u64 q, const PolynomialSpec& spec) {
  return double_sum(q, spec, true) / static_cast<double>(phi_trial(q));
}

bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double lambda_trial(u64 n) {
  if (n < 2) return 0.0;
  u64 p = n;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  u64 rest = n;
  while (rest % p == 0) rest /= p;
  return rest == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

int mobius_trial(u64 n) {
  int sign = 1;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

u64 phi_trial(u64 n) {
  u64 count = 0;
  for (u64 k = 1; k <= n; ++k)
    if (slow_gcd(k, n) == 1) ++count;
  return count;
}

double convolution_count(const PolynomialSpec& spec, double z) {
  require(z >= 1, Errc::invalid_argument, "convolution_count: z must be >= 1");
  const double top_real = std::ldexp(z, spec.ell);
  require(top_real <= static_cast<double>(kMaxConvolutionRange), Errc::range_guard,
          "convolution_count: 2^ell z exceeds 10^7");
  const u64 top = static_cast<u64>(std::floor(top_real));
  const u64 bottom = static_cast<u64>(std::floor(z));
  double total = 0.0;
  for (u64 m = 1;; ++m) {
    const u64 mp = ipow(m, spec.ell);
    if (mp > top) break;
    if (mp <= bottom) continue;
    const i64 shifted = static_cast<i64>(mp) + spec.u;
    if (shifted < 1 || static_cast<u64>(shifted) > top) continue;
    total += lambda_trial(m) * lambda_trial(static_cast<u64>(shifted));
  }
  return total;
}

namespace {

template <class Weight>
double count_over_m(const PolynomialSpec& spec, u64 X, Weight weight) {
  double total = 0.0;
  for (u64 m = 1;; ++m) {
    const u64 mp = ipow(m, spec.ell);
    if (mp > X) break;
    total += weight(m, static_cast<u64>(static_cast<i64>(mp) + spec.u));
  }
  return total;
}

}  // namespace

double weighted_count(const PolynomialSpec& spec, u64 X) {
  require(X <= kMaxConvolutionRange, Errc::range_guard, "oracle weighted_count: X exceeds 10^7");
  return count_over_m(spec, X, [](u64 m, u64 v) {
    const double lm = lambda_trial(m);
    return lm == 0.0 ? 0.0 : lm * lambda_trial(v);
  });
}

double outer_count(const PolynomialSpec& spec, u64 X) {
  require(X <= kMaxConvolutionRange, Errc::range_guard, "oracle outer_count: X exceeds 10^7");
  return count_over_m(spec, X, [](u64, u64 v) { return lambda_trial(v); });
}

}  // namespace bhavg::oracle
