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

#ifndef BHAVG_CONTEXT_HPP
#define BHAVG_CONTEXT_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "bhavg/arith.hpp"

namespace bhavg {

struct PrimeList {
  u64 limit = 0;
  std::vector<std::uint32_t> primes;

  // Primes p <= x; x may not exceed limit.
  std::span<const std::uint32_t> up_to(u64 x) const;
};

// Shared read-only tables plus the worker count. Tables only ever grow: a
// request beyond the cached limit builds a larger table under the lock and
// swaps the pointer, while readers keep the snapshot they already hold.
class Context {
 public:
  explicit Context(unsigned threads = 0);

  std::shared_ptr<const PrimeList> primes(u64 limit) const;
  std::shared_ptr<const LambdaTable> lambda(u64 limit) const;

  unsigned threads() const noexcept { return threads_; }
  void set_threads(unsigned threads);

  static constexpr u64 kMaxPrimeLimit = 2'000'000'000;
  static constexpr u64 kMaxLambdaLimit = 200'000'000;

 private:
  unsigned threads_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const PrimeList> primes_;
  mutable std::shared_ptr<const LambdaTable> lambda_;
};

}  // namespace bhavg

#endif  // BHAVG_CONTEXT_HPP
