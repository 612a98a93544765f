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

#ifndef BHAVG_LOCAL_HPP
#define BHAVG_LOCAL_HPP

#include <complex>
#include <cstdint>

#include "bhavg/arith.hpp"

namespace bhavg {

/// The binomial x^ell + u.
struct PolynomialSpec {
  int ell = 1;
  i64 u = 1;

  void validate() const;
};

/// Number of roots of x^ell + u modulo the prime p. Rejects composite p.
int rho(u64 p, const PolynomialSpec& spec);

// Same without the primality check, for callers iterating over a sieve.
int rho_unchecked(u64 p, const PolynomialSpec& spec);

// Residue enumeration, used below p = 64 and as a cross-check.
int rho_enumerate(u64 p, const PolynomialSpec& spec);

// Euler-criterion closed form for every p (no enumeration, no ell = 2 shortcut).
int rho_power_residue(u64 p, const PolynomialSpec& spec);

/// Exact fraction with positive denominator, kept in lowest terms.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(i64 num, i64 den);

/// lambda(q, u) = prod_{p | q} (rho(p) - 1) for square-free q.
i64 lambda_q(u64 q, const PolynomialSpec& spec);

/// A(q, u) for square-free q, as an exact fraction.
Rational A_q(u64 q, const PolynomialSpec& spec);

// Per-prime numerators: A(p, u) = a_numerator(p) / (p - 1).
i64 A_prime_numerator(u64 p, int rho_p, bool p_divides_u);

/// B_ell(q, a): sum over reduced residues h of e(a h^ell / q).
std::complex<double> gauss_B(u64 q, i64 a, int ell);

/// B'_ell(q, a): the same sum over all residues h mod q.
std::complex<double> gauss_Bprime(u64 q, i64 a, int ell);

/// Irreducibility of x^ell + u over Q (Capelli's criterion for binomials).
bool is_irreducible(const PolynomialSpec& spec);

// e(num/den) with the numerator reduced exactly first.
std::complex<double> unit_root(u64 num, u64 den);

}  // namespace bhavg

#endif  // BHAVG_LOCAL_HPP
