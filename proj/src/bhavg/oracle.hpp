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

#ifndef BHAVG_ORACLE_HPP
#define BHAVG_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "bhavg/local.hpp"

// Slow reference implementations. Nothing in here calls into the fast paths
// of arith/local/series/expsum; every routine is a literal enumeration with a
// hard cap on its input range.
namespace bhavg::oracle {

inline constexpr u64 kMaxRhoPrime = 1'000'000;
inline constexpr u64 kMaxModulus = 10'000;
inline constexpr u64 kMaxConvolutionRange = 10'000'000;

/// #{x mod p : x^ell + u = 0 mod p} by enumerating x with repeated multiplication.
int rho_bruteforce(u64 p, const PolynomialSpec& spec);

/// counts[r] = #{x mod p : x^ell = r mod p}; rho(p, u) = counts[-u mod p].
std::vector<std::uint32_t> power_histogram(u64 p, int ell);

/// (1/q) sum_{a unit} sum_{h} e(a (h^ell + u) / q).
std::complex<double> lambda_bruteforce(u64 q, const PolynomialSpec& spec);

/// (1/phi(q)) sum_{a unit} sum_{h unit} e(a (h^ell + u) / q).
std::complex<double> A_bruteforce(u64 q, const PolynomialSpec& spec);

bool is_prime_trial(u64 n);
double lambda_trial(u64 n);
int mobius_trial(u64 n);
u64 phi_trial(u64 n);

/// sum over z < m^ell <= 2^ell z with m^ell + u <= 2^ell z of Lambda(m) Lambda(m^ell + u).
double convolution_count(const PolynomialSpec& spec, double z);

/// sum_{m^ell <= X} Lambda(m) Lambda(m^ell + u), all by trial division.
double weighted_count(const PolynomialSpec& spec, u64 X);

/// sum_{m^ell <= X} Lambda(m^ell + u), by trial division.
double outer_count(const PolynomialSpec& spec, u64 X);

}  // namespace bhavg::oracle

#endif  // BHAVG_ORACLE_HPP
