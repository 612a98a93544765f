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

#ifndef BHAVG_VARIANCE_HPP
#define BHAVG_VARIANCE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "bhavg/context.hpp"
#include "bhavg/counts.hpp"

namespace bhavg {

struct Quantiles {
  double min = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double p90 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// Linear-interpolation quantiles of the given sample.
Quantiles summarize(std::vector<double> values);

/// The averaged statistic sum_{u <= y} |count(u) - sigma(u) * m_count|^2.
struct VarianceReport {
  int ell = 2;
  u64 y = 0;
  u64 X = 0;
  CountVariant variant = CountVariant::weighted;
  double sigma_cutoff = 0.0;
  double S = 0.0;
  double normalized = 0.0;  // S / (y X^{2/ell})
  u64 n_obstructed = 0;     // u with sigma(u) == 0
  double S_unobstructed = 0.0;
  double normalized_unobstructed = 0.0;
  Quantiles per_u_quantiles;  // of |error|
  std::vector<ErrorRecord> records;  // ascending u
};

/// Runs the sweep u = 1..y in parallel; the reduction is in ascending u so the
/// report is identical for every thread count.
VarianceReport variance(const Context& ctx, int ell, u64 y, u64 X, double sigma_cutoff, CountVariant variant);

VarianceReport variance_S(const Context& ctx, int ell, u64 y, u64 X, double sigma_cutoff);
VarianceReport variance_S_prime(const Context& ctx, int ell, u64 y, u64 X, double sigma_cutoff);

enum class TruncationRoute { dirichlet_sum, euler_product };

/// (1/y) sum_{y < n <= 2y} |S'(n v, z) - sigma'(n v, ref_cutoff)|^2.
double meansquare_truncation(const Context& ctx, int ell, i64 v, u64 y, double z, double ref_cutoff,
                             TruncationRoute route = TruncationRoute::dirichlet_sum);

/// (sum_{u<=y} |P(u,x) - S(u,x)|^2, sum_{u<=y} |P'(u,x) - S'(u,x)|^2) with x <= 10^4.
std::pair<double, double> product_vs_sum_discrepancy(const Context& ctx, int ell, u64 y, double x);

}  // namespace bhavg

#endif  // BHAVG_VARIANCE_HPP
