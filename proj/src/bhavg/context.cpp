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

#include "bhavg/context.hpp"

#include <algorithm>
#include <string>

#include "bhavg/common.hpp"

namespace bhavg {

std::span<const std::uint32_t> PrimeList::up_to(u64 x) const {
  require(x <= limit, Errc::range_guard, "PrimeList::up_to: request beyond table limit");
  const auto end = std::upper_bound(primes.begin(), primes.end(), x);
  return {primes.data(), static_cast<std::size_t>(end - primes.begin())};
}

Context::Context(unsigned threads) : threads_(threads == 0 ? default_threads() : threads) {}

void Context::set_threads(unsigned threads) { threads_ = threads == 0 ? default_threads() : threads; }

std::shared_ptr<const PrimeList> Context::primes(u64 limit) const {
  if (limit > kMaxPrimeLimit)
    fail(Errc::range_guard, "prime table limit " + std::to_string(limit) + " exceeds " +
                                std::to_string(kMaxPrimeLimit));
  std::lock_guard<std::mutex> lock(mutex_);
  if (!primes_ || primes_->limit < limit) {
    // Grow geometrically so sweeps with creeping cutoffs do not re-sieve each time.
    const u64 target = std::min(kMaxPrimeLimit, std::max({limit, u64{1} << 16,
                                                          primes_ ? primes_->limit * 2 : u64{0}}));
    auto table = std::make_shared<PrimeList>();
    table->limit = target;
    table->primes = sieve_primes(target);
    primes_ = std::move(table);
  }
  return primes_;
}

std::shared_ptr<const LambdaTable> Context::lambda(u64 limit) const {
  if (limit > kMaxLambdaLimit)
    fail(Errc::range_guard, "von Mangoldt table limit " + std::to_string(limit) + " exceeds " +
                                std::to_string(kMaxLambdaLimit));
  std::lock_guard<std::mutex> lock(mutex_);
  if (!lambda_ || lambda_->limit() < limit) {
    const u64 target = std::min(kMaxLambdaLimit, std::max({limit, u64{1} << 16,
                                                           lambda_ ? lambda_->limit() * 2 : u64{0}}));
    lambda_ = std::make_shared<const LambdaTable>(target);
  }
  return lambda_;
}

}  // namespace bhavg
