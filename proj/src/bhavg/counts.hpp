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

#ifndef BHAVG_COUNTS_HPP
#define BHAVG_COUNTS_HPP

#include <cstdint>
#include <vector>

#include "bhavg/context.hpp"
#include "bhavg/local.hpp"

namespace bhavg {

enum class CountVariant {
  weighted,  // sum Lambda(m) Lambda(m^ell + u) against sigma
  outer,     // sum Lambda(m^ell + u) against sigma'
};

const char* to_string(CountVariant variant);

struct ErrorRecord {
  PolynomialSpec spec;
  u64 X = 0;
  double count = 0.0;
  double prediction = 0.0;  // sigma * m_count
  double error = 0.0;       // count - prediction
  double sigma = 0.0;
  u64 m_count = 0;          // #{m >= 1 : m^ell <= X}
};

/// sum over m^ell <= X of Lambda(m) Lambda(m^ell + u); requires u >= 1.
double count_weighted(const Context& ctx, const PolynomialSpec& spec, u64 X);

/// sum over m^ell <= X of Lambda(m^ell + u).
double count_outer(const Context& ctx, const PolynomialSpec& spec, u64 X);

// Same sums restricted to lo < m^ell <= hi.
double count_weighted_range(const Context& ctx, const PolynomialSpec& spec, u64 lo, u64 hi);
double count_outer_range(const Context& ctx, const PolynomialSpec& spec, u64 lo, u64 hi);

// Throws a range error unless m^ell + u < 2^63 for every m^ell <= X.
void check_count_guard(const PolynomialSpec& spec, u64 X);

ErrorRecord error_record(const Context& ctx, const PolynomialSpec& spec, u64 X, double sigma_cutoff,
                         CountVariant variant = CountVariant::weighted);

// Record from an already evaluated singular series value.
ErrorRecord error_record_with_sigma(const Context& ctx, const PolynomialSpec& spec, u64 X, double sigma,
                                    CountVariant variant);

struct DyadicBlock {
  u64 lo = 0;  // half-open (lo, hi] in m^ell
  u64 hi = 0;
  double z = 0.0;  // nominal block parameter: the block is (z, 2^ell z] before truncation
};

struct DyadicCover {
  u64 X = 0;
  int ell = 1;
  double B = 0.0;
  u64 cut = 0;  // floor(X L^{-B}); the head is m^ell <= cut
  std::vector<DyadicBlock> blocks;  // descending, contiguous, covering (cut, X]
};

/// Cover of (X L^{-B}, X] by blocks (z, 2^ell z], z = X / 2^ell, X / 2^{2 ell}, ...
DyadicCover dyadic_blocks(u64 X, double B, int ell);

}  // namespace bhavg

#endif  // BHAVG_COUNTS_HPP
