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

#ifndef BHAVG_ARITH_HPP
#define BHAVG_ARITH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bhavg {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);
u64 gcd(u64 a, u64 b);

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(i64 a, u64 n);

/// Primes in [2, limit], ascending. Segmented sieve; limit must stay below 2^32.
std::vector<std::uint32_t> sieve_primes(u64 limit);

/// Dense von Mangoldt table: base(n) is the prime p when n = p^k, else 0.
/// Weights are only turned into log p at accumulation time.
class LambdaTable {
 public:
  LambdaTable() = default;
  explicit LambdaTable(u64 limit);

  u64 limit() const noexcept { return limit_; }
  std::uint32_t base(u64 n) const { return n <= limit_ ? bases_[n] : 0; }
  double weight(u64 n) const;
  std::span<const std::uint32_t> bases() const noexcept { return bases_; }

 private:
  u64 limit_ = 0;
  std::vector<std::uint32_t> bases_;  // index 0 unused
};

LambdaTable build_lambda_table(u64 limit);

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of [0, 2^64).
bool is_prime_64(u64 n);

struct PrimePower {
  u64 p = 0;  // 0 when n is not a prime power
  double weight = 0.0;
};

/// Lambda(n) for arbitrary 64-bit n via prime-power detection.
PrimePower von_mangoldt_64(u64 n);

/// floor(n^(1/k)), exact.
u64 integer_root(u64 n, unsigned k);

/// base^k if it fits in 64 bits.
bool checked_pow(u64 base, unsigned k, u64& out);

struct FactoredInteger {
  u64 n = 1;
  std::vector<std::pair<u64, unsigned>> factors;  // ascending primes

  bool square_free() const;
  unsigned omega() const { return static_cast<unsigned>(factors.size()); }
};

FactoredInteger factorize(u64 n);
int mobius(u64 q);
u64 euler_phi(u64 q);

// Smallest-prime-factor table for fast factorisation of every n <= limit.
class FactorSieve {
 public:
  explicit FactorSieve(u64 limit);
  u64 limit() const noexcept { return limit_; }
  std::uint32_t smallest_factor(u64 n) const { return spf_[n]; }
  FactoredInteger factor(u64 n) const;

 private:
  u64 limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace bhavg

#endif  // BHAVG_ARITH_HPP
