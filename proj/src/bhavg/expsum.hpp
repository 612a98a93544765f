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

#ifndef BHAVG_EXPSUM_HPP
#define BHAVG_EXPSUM_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "bhavg/context.hpp"
#include "bhavg/local.hpp"

namespace bhavg {

/// A point on R/Z. The rational part num/den is kept exactly; the real part is
/// a 64-bit fixed-point fraction of a turn. n * angle mod 1 is then reduced in
/// integer arithmetic, so phases of m^ell alpha stay accurate for large m^ell.
class Angle {
 public:
  Angle() = default;
  static Angle rational(i64 num, u64 den);
  static Angle real(double turns);

  Angle operator+(const Angle& other) const;
  Angle operator-() const;

  bool is_rational() const noexcept { return !has_real_; }
  u64 num() const noexcept { return num_; }  // in [0, den)
  u64 den() const noexcept { return den_; }
  u64 fixed() const noexcept { return fixed_; }

  /// n * angle mod 1 in units of 2^-64 turns.
  u64 turns(u64 n) const;

  /// The representative in [0, 1).
  long double value() const;

 private:
  u64 num_ = 0;
  u64 den_ = 1;
  u64 fixed_ = 0;
  bool has_real_ = false;
};

// e(t) for t given in 2^-64 turns.
std::complex<double> phase(u64 turns);

struct ExpSumValue {
  std::complex<double> value;
  u64 terms = 0;       // number of summands
  double bound = 0.0;  // sum of |weights|; |value| <= bound
};

/// I_ell(alpha, z) = sum_{z < m^ell <= 2^ell z} e(m^ell alpha)
ExpSumValue eval_I_ell(const Context& ctx, const Angle& alpha, double z, int ell);
/// J_ell(alpha, z) = sum_{z < m^ell <= 2^ell z} Lambda(m) e(m^ell alpha)
ExpSumValue eval_J_ell(const Context& ctx, const Angle& alpha, double z, int ell);
/// I(alpha, z) = sum_{m <= 2^ell z} e(-m alpha)
ExpSumValue eval_I(const Context& ctx, const Angle& alpha, double z, int ell);
/// J(alpha, z) = sum_{m <= 2^ell z} Lambda(m) e(-m alpha)
ExpSumValue eval_J(const Context& ctx, const Angle& alpha, double z, int ell);

enum class ExpSumKind { I, J, I_ell, J_ell };
ExpSumValue eval_expsum(const Context& ctx, ExpSumKind kind, const Angle& alpha, double z, int ell);

struct MajorArc {
  u64 q = 1;
  u64 a = 1;
  long double lo = 0;  // (lo, hi] = (a/q - delta, a/q + delta]
  long double hi = 0;
};

struct ArcClass {
  bool major = false;
  u64 q = 0;
  u64 a = 0;
};

/// Major arcs J_{q,a} = (a/q - delta, a/q + delta] for q <= Q, (a, q) = 1,
/// with L = log X, Q = L^E and delta = L^E / X.
class ArcPartition {
 public:
  ArcPartition(u64 X, double exponent);

  u64 X() const noexcept { return X_; }
  double exponent() const noexcept { return exponent_; }
  double L() const noexcept { return L_; }
  double Q() const noexcept { return Q_; }
  u64 q_max() const noexcept { return q_max_; }
  long double delta() const noexcept { return delta_; }

  /// sum_{q <= Q} phi(q).
  u64 arc_count() const noexcept { return arc_count_; }

  /// Arcs in increasing order of a/q. Refuses to materialise more than max_count.
  std::vector<MajorArc> arcs(u64 max_count = kMaxEnumerated) const;

  /// sum_{q <= Q} phi(q) * 2 delta.
  long double measure() const;
  /// Sum of interval lengths over the enumerated arcs.
  long double measure_direct() const;

  ArcClass classify(const Angle& alpha) const;

  static constexpr u64 kMaxEnumerated = 2'000'000;

 private:
  u64 X_;
  double exponent_;
  double L_;
  double Q_;
  u64 q_max_;
  long double delta_;
  u64 arc_count_ = 0;
};

inline ArcPartition build_arcs(u64 X, double exponent) { return ArcPartition(X, exponent); }

struct MajorResidual {
  ExpSumValue R_ell;        // J_ell(alpha) - I_ell(beta) B_ell(q,a) / phi(q)
  ExpSumValue R_ell_prime;  // I_ell(alpha) - I_ell(beta) B'_ell(q,a) / q
};

/// Residuals at alpha = a/q + beta; requires gcd(a, q) = 1.
MajorResidual major_residual(const Context& ctx, u64 q, i64 a, double beta, double z, int ell);

/// R(alpha) = J(alpha, z) - mu(q)/phi(q) I(beta, z), the linear (e(-m alpha)) residual.
ExpSumValue major_residual_linear(const Context& ctx, u64 q, i64 a, double beta, double z, int ell);

/// Samples J(k/N, z) and J_ell(k/N, z) on an N-point grid with N a power of two
/// at least 2 * 2^ell z + u_max + 1, which exceeds every frequency of
/// J J_ell e(u alpha). Averages over the grid are then exact integrals over [0, 1).
class CircleSampler {
 public:
  CircleSampler(const Context& ctx, int ell, double z, i64 u_max);

  u64 size() const noexcept { return n_; }
  u64 top() const noexcept { return top_; }  // floor(2^ell z)

  std::complex<double> J_sample(u64 k) const { return j_[k]; }
  std::complex<double> J_ell_sample(u64 k) const { return j_ell_[k]; }

  /// (1/N) sum_k J(k/N) J_ell(k/N) e(u k/N).
  std::complex<double> integral(i64 u) const;

  /// ((1/N) sum_k |J_ell(k/N)|^2, sum_{z < m^ell <= 2^ell z} Lambda(m)^2).
  std::pair<double, double> parseval() const;

  static constexpr u64 kMaxTop = 1'000'000;

 private:
  int ell_;
  double z_;
  i64 u_max_;
  u64 top_;
  u64 n_;
  double lambda_square_sum_;
  std::vector<std::complex<double>> j_;
  std::vector<std::complex<double>> j_ell_;
};

/// The circle identity evaluated as an exact trigonometric-polynomial integral:
/// int_0^1 J(a, z) J_ell(a, z) e(u a) da. Returns the real part.
double circle_integral(const Context& ctx, const PolynomialSpec& spec, double z);

}  // namespace bhavg

#endif  // BHAVG_EXPSUM_HPP
