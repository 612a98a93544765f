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

#include "bhavg/arith.hpp"

#include <array>
#include <cmath>

#include "bhavg/common.hpp"

namespace bhavg {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int jacobi(i64 a_signed, u64 n) {
  require(n % 2 == 1, Errc::invalid_argument, "jacobi: modulus must be odd");
  i64 r = a_signed % static_cast<i64>(n);
  u64 a = static_cast<u64>(r < 0 ? r + static_cast<i64>(n) : r);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const u64 m8 = n % 8;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::vector<std::uint32_t> sieve_primes(u64 limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  require(limit < (u64{1} << 32), Errc::range_guard, "sieve_primes: limit must be below 2^32");

  const u64 root = integer_root(limit, 2);
  std::vector<char> small(root + 1, 1);
  std::vector<u64> seeds;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    seeds.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }

  constexpr u64 kSegment = u64{1} << 18;
  std::vector<char> segment(kSegment);
  std::vector<u64> next(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) next[i] = seeds[i] * seeds[i];

  primes.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit)) + 16));
  for (u64 low = 2; low <= limit; low += kSegment) {
    const u64 high = std::min(low + kSegment - 1, limit);
    std::fill(segment.begin(), segment.end(), 1);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const u64 p = seeds[i];
      if (p * p > high) break;
      u64 j = next[i];
      for (; j <= high; j += p) segment[j - low] = 0;
      next[i] = j;
    }
    for (u64 n = low; n <= high; ++n)
      if (segment[n - low]) primes.push_back(static_cast<std::uint32_t>(n));
  }
  return primes;
}

LambdaTable::LambdaTable(u64 limit) : limit_(limit), bases_(limit + 1, 0) {
  for (const std::uint32_t p : sieve_primes(limit)) {
    u64 pk = p;
    while (true) {
      bases_[pk] = p;
      if (pk > limit / p) break;
      pk *= p;
    }
  }
}

double LambdaTable::weight(u64 n) const {
  const std::uint32_t p = base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

LambdaTable build_lambda_table(u64 limit) { return LambdaTable(limit); }

namespace {

bool strong_probable_prime(u64 n, u64 base, u64 d, unsigned s) {
  base %= n;
  if (base == 0) return true;
  u64 x = powmod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr std::array<std::uint32_t, 18> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                        29, 31, 37, 41, 43, 47, 53, 59, 61};

}  // namespace

bool is_prime_64(u64 n) {
  if (n < 2) return false;
  for (const std::uint32_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 67 * 67) return true;

  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (n < (u64{1} << 32)) {
    for (const u64 a : {2u, 7u, 61u})
      if (!strong_probable_prime(n, a, d, s)) return false;
    return true;
  }
  for (const u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
    if (!strong_probable_prime(n, a, d, s)) return false;
  return true;
}

bool checked_pow(u64 base, unsigned k, u64& out) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= base;
    if (acc > ~u64{0}) return false;
  }
  out = static_cast<u64>(acc);
  return true;
}

u64 integer_root(u64 n, unsigned k) {
  require(k >= 1, Errc::invalid_argument, "integer_root: k must be >= 1");
  if (k == 1 || n < 2) return n;
  if (k >= 64) return 1;
  u64 r = static_cast<u64>(std::llround(std::pow(static_cast<long double>(n), 1.0L / k)));
  u64 v = 0;
  while (r > 0 && (!checked_pow(r, k, v) || v > n)) --r;
  while (checked_pow(r + 1, k, v) && v <= n) ++r;
  return r;
}

PrimePower von_mangoldt_64(u64 n) {
  if (n < 2) return {};
  for (const std::uint32_t p : kSmallPrimes) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    if (n == 1) return {p, std::log(static_cast<double>(p))};
    return {};
  }
  // No prime factor below 67 from here on, so any power has exponent <= 10.
  if (n < 67 * 67 || is_prime_64(n)) return {n, std::log(static_cast<double>(n))};
  u64 bound = 67 * 67;
  for (unsigned k = 2; bound <= n; ++k) {
    const u64 r = integer_root(n, k);
    u64 v = 0;
    if (checked_pow(r, k, v) && v == n && is_prime_64(r)) return {r, std::log(static_cast<double>(r))};
    if (!checked_pow(67, k + 1, bound)) break;
  }
  return {};
}

bool FactoredInteger::square_free() const {
  for (const auto& f : factors)
    if (f.second > 1) return false;
  return true;
}

FactoredInteger factorize(u64 n) {
  require(n >= 1, Errc::invalid_argument, "factorize: n must be >= 1");
  FactoredInteger out;
  out.n = n;
  u64 rest = n;
  bool rest_prime = is_prime_64(rest);
  for (u64 p = 2; !rest_prime && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    out.factors.emplace_back(p, e);
    rest_prime = is_prime_64(rest);
  }
  if (rest > 1) out.factors.emplace_back(rest, 1);
  return out;
}

int mobius(u64 q) {
  const FactoredInteger f = factorize(q);
  if (!f.square_free()) return 0;
  return f.omega() % 2 == 0 ? 1 : -1;
}

u64 euler_phi(u64 q) {
  u64 phi = q;
  for (const auto& [p, e] : factorize(q).factors) phi = phi / p * (p - 1);
  return phi;
}

FactorSieve::FactorSieve(u64 limit) : limit_(limit), spf_(limit + 1, 0) {
  require(limit < (u64{1} << 32), Errc::range_guard, "FactorSieve: limit must be below 2^32");
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (const std::uint32_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

FactoredInteger FactorSieve::factor(u64 n) const {
  require(n >= 1 && n <= limit_, Errc::range_guard, "FactorSieve::factor: n outside table");
  FactoredInteger out;
  out.n = n;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.emplace_back(p, e);
  }
  return out;
}

}  // namespace bhavg
