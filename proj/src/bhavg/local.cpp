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

#include "bhavg/local.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bhavg/common.hpp"

namespace bhavg {

void PolynomialSpec::validate() const {
  require(ell >= 1, Errc::invalid_argument, "degree ell must be >= 1");
  require(u != 0, Errc::invalid_argument, "shift u must be nonzero");
  require(u != std::numeric_limits<i64>::min(), Errc::range_guard, "shift u out of range");
}

namespace {

u64 residue(i64 u, u64 p) {
  const i64 r = u % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

}  // namespace

int rho_enumerate(u64 p, const PolynomialSpec& spec) {
  const u64 target = (p - residue(spec.u, p)) % p;  // x^ell = -u
  int count = 0;
  for (u64 x = 0; x < p; ++x)
    if (powmod(x, static_cast<u64>(spec.ell), p) == target) ++count;
  return count;
}

int rho_power_residue(u64 p, const PolynomialSpec& spec) {
  const u64 ur = residue(spec.u, p);
  if (ur == 0) return 1;
  const u64 g = gcd(static_cast<u64>(spec.ell), p - 1);
  return powmod(p - ur, (p - 1) / g, p) == 1 ? static_cast<int>(g) : 0;
}

int rho_unchecked(u64 p, const PolynomialSpec& spec) {
  if (p <= 64) return rho_enumerate(p, spec);
  if (residue(spec.u, p) == 0) return 1;
  if (spec.ell == 2) return 1 + jacobi(-spec.u, p);
  return rho_power_residue(p, spec);
}

int rho(u64 p, const PolynomialSpec& spec) {
  spec.validate();
  if (!is_prime_64(p)) fail(Errc::domain, "rho: modulus " + std::to_string(p) + " is not prime");
  return rho_unchecked(p, spec);
}

Rational make_rational(i64 num, i64 den) {
  require(den != 0, Errc::singular_factor, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 g = static_cast<i64>(gcd(static_cast<u64>(num < 0 ? -num : num), static_cast<u64>(den)));
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

namespace {

FactoredInteger square_free_factors(u64 q, const char* who) {
  require(q >= 1, Errc::invalid_argument, "modulus q must be >= 1");
  FactoredInteger f = factorize(q);
  if (!f.square_free()) fail(Errc::domain, std::string(who) + ": q = " + std::to_string(q) + " is not square-free");
  return f;
}

i64 checked_mul(i64 a, i64 b) {
  i64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) fail(Errc::range_guard, "exact product overflows 64 bits");
  return out;
}

}  // namespace

i64 lambda_q(u64 q, const PolynomialSpec& spec) {
  spec.validate();
  i64 value = 1;
  for (const auto& [p, e] : square_free_factors(q, "lambda_q").factors)
    value = checked_mul(value, rho_unchecked(p, spec) - 1);
  return value;
}

i64 A_prime_numerator(u64 p, int rho_p, bool p_divides_u) {
  const i64 pp = static_cast<i64>(p);
  return p_divides_u ? pp * (rho_p - 2) + 1 : pp * (rho_p - 1) + 1;
}

Rational A_q(u64 q, const PolynomialSpec& spec) {
  spec.validate();
  // (q / phi(q)) prod (rho - 1 + 1/p) ... : the 1/p factors cancel q exactly.
  i64 num = 1;
  i64 den = 1;
  for (const auto& [p, e] : square_free_factors(q, "A_q").factors) {
    const bool divides = spec.u % static_cast<i64>(p) == 0;
    num = checked_mul(num, A_prime_numerator(p, rho_unchecked(p, spec), divides));
    den = checked_mul(den, static_cast<i64>(p - 1));
  }
  return make_rational(num, den);
}

std::complex<double> unit_root(u64 num, u64 den) {
  num %= den;
  // Map to (-1/2, 1/2] turns before scaling so the argument stays small.
  const double t = 2 * num > den ? -static_cast<double>(den - num) / static_cast<double>(den)
                                 : static_cast<double>(num) / static_cast<double>(den);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

namespace {

std::complex<double> gauss_sum(u64 q, i64 a, int ell, bool units_only) {
  require(q >= 1, Errc::invalid_argument, "gauss sum: q must be >= 1");
  require(ell >= 1, Errc::invalid_argument, "gauss sum: ell must be >= 1");
  const u64 ar = residue(a, q);
  CompensatedSum re, im;
  for (u64 h = 0; h < q; ++h) {
    if (units_only && gcd(h, q) != 1) continue;
    const auto z = unit_root(mulmod(ar, powmod(h, static_cast<u64>(ell), q), q), q);
    re += z.real();
    im += z.imag();
  }
  return {re.value(), im.value()};
}

bool exact_power(i64 c, unsigned t) {
  // c = w^t for some integer w.
  if (c < 0 && t % 2 == 0) return false;
  const u64 mag = c < 0 ? static_cast<u64>(-c) : static_cast<u64>(c);
  const u64 r = integer_root(mag, t);
  u64 v = 0;
  return checked_pow(r, t, v) && v == mag;
}

}  // namespace

std::complex<double> gauss_B(u64 q, i64 a, int ell) { return gauss_sum(q, a, ell, true); }

std::complex<double> gauss_Bprime(u64 q, i64 a, int ell) { return gauss_sum(q, a, ell, false); }

bool is_irreducible(const PolynomialSpec& spec) {
  spec.validate();
  // x^ell - c with c = -u.
  const i64 c = -spec.u;
  for (const auto& [t, e] : factorize(static_cast<u64>(spec.ell)).factors)
    if (exact_power(c, static_cast<unsigned>(t))) return false;
  if (spec.ell % 4 == 0 && spec.u > 0 && spec.u % 4 == 0 && exact_power(spec.u / 4, 4)) return false;
  return true;
}

}  // namespace bhavg
