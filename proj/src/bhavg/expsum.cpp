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

#include "bhavg/expsum.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "bhavg/common.hpp"

namespace bhavg {

Angle Angle::rational(i64 num, u64 den) {
  require(den >= 1, Errc::invalid_argument, "angle denominator must be >= 1");
  Angle a;
  const i64 r = static_cast<i64>(static_cast<i128>(num) % static_cast<i128>(den));
  const u64 n = r < 0 ? static_cast<u64>(static_cast<i128>(r) + den) : static_cast<u64>(r);
  const u64 g = gcd(n, den);
  a.num_ = n / g;
  a.den_ = den / g;
  return a;
}

Angle Angle::real(double turns) {
  require(std::isfinite(turns), Errc::invalid_argument, "angle must be finite");
  Angle a;
  // The fractional part of a double is exact, and so is the scaling by 2^64.
  const long double frac = static_cast<long double>(turns) - std::floor(static_cast<long double>(turns));
  const long double scaled = std::ldexp(frac, 64);
  a.fixed_ = scaled >= std::ldexp(1.0L, 64) ? 0 : static_cast<u64>(scaled);
  a.has_real_ = true;
  return a;
}

Angle Angle::operator+(const Angle& other) const {
  Angle out;
  const u64 g = gcd(den_, other.den_);
  const u128 lcm = static_cast<u128>(den_ / g) * other.den_;
  require(lcm <= ~u64{0}, Errc::range_guard, "angle sum: denominator overflows 64 bits");
  const u64 den = static_cast<u64>(lcm);
  const u128 n = (static_cast<u128>(num_) * (den / den_) + static_cast<u128>(other.num_) * (den / other.den_)) % den;
  out = Angle::rational(0, 1);
  const u64 gg = gcd(static_cast<u64>(n), den);
  out.num_ = static_cast<u64>(n) / gg;
  out.den_ = den / gg;
  out.fixed_ = fixed_ + other.fixed_;
  out.has_real_ = has_real_ || other.has_real_;
  return out;
}

Angle Angle::operator-() const {
  Angle out = *this;
  out.num_ = num_ == 0 ? 0 : den_ - num_;
  out.fixed_ = u64{0} - fixed_;
  return out;
}

u64 Angle::turns(u64 n) const {
  const u64 r = static_cast<u64>(static_cast<u128>(n % den_) * num_ % den_);
  const u64 rational_part = static_cast<u64>((static_cast<u128>(r) << 64) / den_);
  return rational_part + n * fixed_;
}

long double Angle::value() const {
  const long double v = static_cast<long double>(num_) / static_cast<long double>(den_) +
                        std::ldexp(static_cast<long double>(fixed_), -64);
  return v >= 1.0L ? v - 1.0L : v;
}

std::complex<double> phase(u64 turns) {
  // Quarter turns are applied exactly; only the remainder goes through cos/sin.
  const unsigned quadrant = static_cast<unsigned>(turns >> 62);
  const u64 rest = turns & ((u64{1} << 62) - 1);
  const double angle = std::ldexp(static_cast<double>(rest), -64) * 2.0 * std::numbers::pi;
  const double c = rest == 0 ? 1.0 : std::cos(angle);
  const double s = rest == 0 ? 0.0 : std::sin(angle);
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

namespace {

struct BlockRange {
  u64 lo;  // floor(z)
  u64 hi;  // floor(2^ell z)
};

BlockRange block_range(double z, int ell) {
  require(ell >= 1 && ell <= 40, Errc::invalid_argument, "exponential sum: ell out of range");
  require(std::isfinite(z) && z >= 1.0, Errc::invalid_argument, "exponential sum: z must be >= 1");
  const double top = std::ldexp(z, ell);
  require(top < 0x1p62, Errc::range_guard, "exponential sum: 2^ell z exceeds 2^62");
  return {static_cast<u64>(std::floor(z)), static_cast<u64>(std::floor(top))};
}

class ComplexSum {
 public:
  void add(std::complex<double> v) {
    re_ += v.real();
    im_ += v.imag();
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

template <class Weight>
ExpSumValue power_sum(const Angle& alpha, double z, int ell, Weight weight) {
  const auto [lo, hi] = block_range(z, ell);
  const u64 m_lo = integer_root(lo, static_cast<unsigned>(ell)) + 1;
  const u64 m_hi = integer_root(hi, static_cast<unsigned>(ell));
  ComplexSum sum;
  CompensatedSum bound;
  ExpSumValue out;
  for (u64 m = m_lo; m <= m_hi; ++m) {
    ++out.terms;
    const double w = weight(m);
    if (w == 0.0) continue;
    u64 mp = 0;
    checked_pow(m, static_cast<unsigned>(ell), mp);
    sum.add(w * phase(alpha.turns(mp)));
    bound += std::fabs(w);
  }
  out.value = sum.value();
  out.bound = bound.value();
  return out;
}

template <class Weight>
ExpSumValue linear_sum(const Angle& alpha, double z, int ell, Weight weight) {
  const auto [lo, hi] = block_range(z, ell);
  const Angle neg = -alpha;
  ComplexSum sum;
  CompensatedSum bound;
  ExpSumValue out;
  for (u64 m = 1; m <= hi; ++m) {
    ++out.terms;
    const double w = weight(m);
    if (w == 0.0) continue;
    sum.add(w * phase(neg.turns(m)));
    bound += std::fabs(w);
  }
  out.value = sum.value();
  out.bound = bound.value();
  return out;
}

void check_trivial_bound(const ExpSumValue& v) {
  if (std::abs(v.value) > v.bound * (1.0 + 1e-12) + 1e-12)
    fail(Errc::internal, "exponential sum exceeds its trivial bound");
}

}  // namespace

ExpSumValue eval_I_ell(const Context&, const Angle& alpha, double z, int ell) {
  auto v = power_sum(alpha, z, ell, [](u64) { return 1.0; });
  check_trivial_bound(v);
  return v;
}

ExpSumValue eval_J_ell(const Context& ctx, const Angle& alpha, double z, int ell) {
  const auto [lo, hi] = block_range(z, ell);
  const auto table = ctx.lambda(integer_root(hi, static_cast<unsigned>(ell)));
  auto v = power_sum(alpha, z, ell, [&](u64 m) { return table->weight(m); });
  check_trivial_bound(v);
  return v;
}

ExpSumValue eval_I(const Context&, const Angle& alpha, double z, int ell) {
  auto v = linear_sum(alpha, z, ell, [](u64) { return 1.0; });
  check_trivial_bound(v);
  return v;
}

ExpSumValue eval_J(const Context& ctx, const Angle& alpha, double z, int ell) {
  const auto table = ctx.lambda(block_range(z, ell).hi);
  auto v = linear_sum(alpha, z, ell, [&](u64 m) { return table->weight(m); });
  check_trivial_bound(v);
  return v;
}

ExpSumValue eval_expsum(const Context& ctx, ExpSumKind kind, const Angle& alpha, double z, int ell) {
  switch (kind) {
    case ExpSumKind::I: return eval_I(ctx, alpha, z, ell);
    case ExpSumKind::J: return eval_J(ctx, alpha, z, ell);
    case ExpSumKind::I_ell: return eval_I_ell(ctx, alpha, z, ell);
    case ExpSumKind::J_ell: return eval_J_ell(ctx, alpha, z, ell);
  }
  fail(Errc::invalid_argument, "unknown exponential sum kind");
}

namespace {

// Consecutive fractions of the Farey sequence of order n, starting after 0/1.
class FareyWalk {
 public:
  explicit FareyWalk(u64 n) : n_(n), a_(0), b_(1), c_(1), d_(n) {}
  bool done() const { return a_ == 1 && b_ == 1; }
  // Current neighbouring pair (a/b, c/d).
  u64 a() const { return a_; }
  u64 b() const { return b_; }
  u64 c() const { return c_; }
  u64 d() const { return d_; }
  void advance() {
    const u64 k = (n_ + b_) / d_;
    const u64 e = k * c_ - a_;
    const u64 f = k * d_ - b_;
    a_ = c_;
    b_ = d_;
    c_ = e;
    d_ = f;
  }

 private:
  u64 n_, a_, b_, c_, d_;
};

u64 totient_sum(u64 n) {
  std::vector<u64> phi(n + 1);
  for (u64 i = 0; i <= n; ++i) phi[i] = i;
  for (u64 i = 2; i <= n; ++i)
    if (phi[i] == i)
      for (u64 j = i; j <= n; j += i) phi[j] -= phi[j] / i;
  u64 total = 0;
  for (u64 i = 1; i <= n; ++i) total += phi[i];
  return total;
}

}  // namespace

ArcPartition::ArcPartition(u64 X, double exponent) : X_(X), exponent_(exponent) {
  require(X >= 16, Errc::invalid_argument, "build_arcs: X must be >= 16");
  require(std::isfinite(exponent) && exponent >= 0, Errc::invalid_argument, "build_arcs: exponent must be >= 0");
  L_ = std::log(static_cast<double>(X));
  Q_ = std::pow(L_, exponent);
  const long double Q = static_cast<long double>(Q_);
  if (Q * Q * Q > static_cast<long double>(X))
    fail(Errc::range_guard, "build_arcs: Q^3 > X (Q = L^E = " + std::to_string(Q_) + ")");
  q_max_ = static_cast<u64>(std::floor(Q_));
  delta_ = Q / static_cast<long double>(X);
  arc_count_ = totient_sum(q_max_);

  // Half-open arcs around neighbouring centres a/b < c/d are disjoint iff
  // c/d - a/b = 1/(b d) >= 2 delta. The pair (0/1, 1/n) covers the wrap at 1.
  if (arc_count_ <= kMaxEnumerated) {
    for (FareyWalk w(q_max_); !w.done(); w.advance()) {
      if (1.0L < 2.0L * delta_ * static_cast<long double>(w.b()) * static_cast<long double>(w.d()))
        fail(Errc::domain, "build_arcs: arcs around " + std::to_string(w.a()) + "/" + std::to_string(w.b()) +
                               " and " + std::to_string(w.c()) + "/" + std::to_string(w.d()) + " overlap");
    }
  } else {
    const long double n = static_cast<long double>(q_max_);
    if (1.0L < 2.0L * delta_ * n * (n - 1.0L)) fail(Errc::domain, "build_arcs: neighbouring major arcs overlap");
  }
}

std::vector<MajorArc> ArcPartition::arcs(u64 max_count) const {
  if (arc_count_ > max_count)
    fail(Errc::range_guard, "ArcPartition::arcs: " + std::to_string(arc_count_) + " arcs exceed the enumeration cap");
  std::vector<MajorArc> out;
  out.reserve(arc_count_);
  for (FareyWalk w(q_max_);; w.advance()) {
    const long double centre = static_cast<long double>(w.c()) / static_cast<long double>(w.d());
    out.push_back({w.d(), w.c(), centre - delta_, centre + delta_});
    if (w.c() == 1 && w.d() == 1) break;
  }
  return out;
}

long double ArcPartition::measure() const { return static_cast<long double>(arc_count_) * 2.0L * delta_; }

long double ArcPartition::measure_direct() const {
  long double total = 0;
  for (const MajorArc& arc : arcs()) total += arc.hi - arc.lo;
  return total;
}

ArcClass ArcPartition::classify(const Angle& alpha) const {
  const long double v = alpha.value();
  for (u64 q = 1; q <= q_max_; ++q) {
    const u64 base = static_cast<u64>(std::floor(v * static_cast<long double>(q)));
    for (u64 a = base; a <= base + 1 && a <= q; ++a) {
      // a = 0 only occurs for q = 1 and stands for the arc around 1/1.
      if (gcd(a, q) != 1) continue;
      bool inside = false;
      if (alpha.is_rational()) {
        const i128 diff = static_cast<i128>(alpha.num()) * q - static_cast<i128>(a) * alpha.den();
        const long double scale = delta_ * static_cast<long double>(alpha.den()) * static_cast<long double>(q);
        const long double d = static_cast<long double>(diff);
        inside = -scale < d && d <= scale;
      } else {
        constexpr long double kSlack = 1e-15L;
        const long double d = v - static_cast<long double>(a) / static_cast<long double>(q);
        inside = -delta_ - kSlack < d && d <= delta_ + kSlack;
      }
      if (inside) return {true, q, a == 0 ? 1 : a};
    }
  }
  return {};
}

MajorResidual major_residual(const Context& ctx, u64 q, i64 a, double beta, double z, int ell) {
  require(q >= 1, Errc::invalid_argument, "major_residual: q must be >= 1");
  const u64 ar = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  require(gcd(ar, q) == 1, Errc::invalid_argument, "major_residual: gcd(a, q) must be 1");
  const Angle alpha = Angle::rational(a, q) + Angle::real(beta);
  const Angle b = Angle::real(beta);
  const ExpSumValue i_beta = eval_I_ell(ctx, b, z, ell);
  const ExpSumValue j_alpha = eval_J_ell(ctx, alpha, z, ell);
  const ExpSumValue i_alpha = eval_I_ell(ctx, alpha, z, ell);
  const auto phi = static_cast<double>(euler_phi(q));

  MajorResidual out;
  out.R_ell.value = j_alpha.value - i_beta.value * gauss_B(q, a, ell) / phi;
  out.R_ell.terms = j_alpha.terms;
  out.R_ell.bound = j_alpha.bound + i_beta.bound;
  out.R_ell_prime.value = i_alpha.value - i_beta.value * gauss_Bprime(q, a, ell) / static_cast<double>(q);
  out.R_ell_prime.terms = i_alpha.terms;
  out.R_ell_prime.bound = 2.0 * i_alpha.bound;
  return out;
}

ExpSumValue major_residual_linear(const Context& ctx, u64 q, i64 a, double beta, double z, int ell) {
  require(q >= 1, Errc::invalid_argument, "major_residual_linear: q must be >= 1");
  const u64 ar = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  require(gcd(ar, q) == 1, Errc::invalid_argument, "major_residual_linear: gcd(a, q) must be 1");
  const Angle alpha = Angle::rational(a, q) + Angle::real(beta);
  const ExpSumValue j = eval_J(ctx, alpha, z, ell);
  const ExpSumValue i = eval_I(ctx, Angle::real(beta), z, ell);
  ExpSumValue out;
  out.value = j.value - (static_cast<double>(mobius(q)) / static_cast<double>(euler_phi(q))) * i.value;
  out.terms = j.terms;
  out.bound = j.bound + i.bound;
  return out;
}

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalised DFT; sign = FFTW_FORWARD gives sum x_n e(-nk/N).
void dft_in_place(std::vector<std::complex<double>>& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (plan == nullptr) fail(Errc::internal, "FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

CircleSampler::CircleSampler(const Context& ctx, int ell, double z, i64 u_max)
    : ell_(ell), z_(z), u_max_(u_max) {
  const auto [lo, hi] = block_range(z, ell);
  require(hi <= kMaxTop, Errc::range_guard, "circle sampling: 2^ell z exceeds 10^6");
  require(u_max >= 0 && static_cast<u64>(u_max) <= kMaxTop, Errc::range_guard, "circle sampling: |u| exceeds 10^6");
  top_ = hi;
  n_ = std::bit_ceil(2 * hi + static_cast<u64>(u_max) + 1);

  const auto table = ctx.lambda(hi);
  j_.assign(n_, 0.0);
  j_ell_.assign(n_, 0.0);
  for (u64 m = 1; m <= hi; ++m) j_[m] = table->weight(m);
  CompensatedSum squares;
  const u64 m_lo = integer_root(lo, static_cast<unsigned>(ell)) + 1;
  const u64 m_hi = integer_root(hi, static_cast<unsigned>(ell));
  for (u64 m = m_lo; m <= m_hi; ++m) {
    u64 mp = 0;
    checked_pow(m, static_cast<unsigned>(ell), mp);
    const double w = table->weight(m);
    j_ell_[mp] = w;
    squares += w * w;
  }
  lambda_square_sum_ = squares.value();
  dft_in_place(j_, FFTW_FORWARD);       // J(k/N)    = sum Lambda(m) e(-m k/N)
  dft_in_place(j_ell_, FFTW_BACKWARD);  // J_ell(k/N) = sum Lambda(m) e(+m^ell k/N)
}

std::complex<double> CircleSampler::integral(i64 u) const {
  require((u < 0 ? -u : u) <= u_max_, Errc::range_guard, "CircleSampler::integral: |u| exceeds the sampled range");
  const u64 ur = static_cast<u64>(((u % static_cast<i64>(n_)) + static_cast<i64>(n_)) % static_cast<i64>(n_));
  ComplexSum sum;
  for (u64 k = 0; k < n_; ++k)
    sum.add(j_[k] * j_ell_[k] * unit_root(static_cast<u64>(static_cast<u128>(ur) * k % n_), n_));
  return sum.value() / static_cast<double>(n_);
}

std::pair<double, double> CircleSampler::parseval() const {
  CompensatedSum sum;
  for (const auto& v : j_ell_) sum += std::norm(v);
  return {sum.value() / static_cast<double>(n_), lambda_square_sum_};
}

double circle_integral(const Context& ctx, const PolynomialSpec& spec, double z) {
  spec.validate();
  require(spec.u >= 1, Errc::invalid_argument, "circle_integral: u must be >= 1");
  const CircleSampler sampler(ctx, spec.ell, z, spec.u);
  const std::complex<double> v = sampler.integral(spec.u);
  if (std::fabs(v.imag()) >= 1e-8)
    fail(Errc::internal, "circle_integral: imaginary part " + std::to_string(v.imag()) + " is not negligible");
  return v.real();
}

}  // namespace bhavg
