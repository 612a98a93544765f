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

#include "bhavg/bhavg.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "bhavg/common.hpp"
#include "bhavg/context.hpp"
#include "bhavg/counts.hpp"
#include "bhavg/expsum.hpp"
#include "bhavg/local.hpp"
#include "bhavg/oracle.hpp"
#include "bhavg/series.hpp"
#include "bhavg/variance.hpp"
#include "bhavg/verify.hpp"

struct bhavg_context {
  bhavg::Context ctx;
};

struct bhavg_variance {
  bhavg::VarianceReport report;
};

struct bhavg_arcs {
  bhavg::ArcPartition partition;
  std::optional<std::vector<bhavg::MajorArc>> arcs;
};

namespace {

using namespace bhavg;

thread_local std::string g_last_error;

bhavg_status to_status(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return BHAVG_INVALID_ARGUMENT;
    case Errc::range_guard: return BHAVG_RANGE_GUARD;
    case Errc::domain: return BHAVG_DOMAIN;
    case Errc::singular_factor: return BHAVG_SINGULAR_FACTOR;
    case Errc::internal: return BHAVG_INTERNAL;
  }
  return BHAVG_INTERNAL;
}

template <class Fn>
bhavg_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BHAVG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BHAVG_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BHAVG_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return BHAVG_INTERNAL;
  }
}

template <class T>
T& deref(T* p, const char* what) {
  if (p == nullptr) fail(Errc::invalid_argument, std::string("null pointer: ") + what);
  return *p;
}

const Context& context_of(const bhavg_context* ctx) { return deref(ctx, "context").ctx; }

PolynomialSpec make_spec(int ell, int64_t u) {
  PolynomialSpec spec{ell, u};
  spec.validate();
  return spec;
}

Angle make_angle(const bhavg_angle& a) {
  Angle out = Angle::rational(a.num, a.den);
  if (a.real != 0.0) out = out + Angle::real(a.real);
  return out;
}

bhavg_series_method to_c(SeriesMethod m) {
  switch (m) {
    case SeriesMethod::dirichlet_sum: return BHAVG_METHOD_DIRICHLET_SUM;
    case SeriesMethod::euler_product: return BHAVG_METHOD_EULER_PRODUCT;
    case SeriesMethod::combined_factor_product: return BHAVG_METHOD_COMBINED_FACTOR_PRODUCT;
  }
  return BHAVG_METHOD_DIRICHLET_SUM;
}

CountVariant from_c(bhavg_count_variant v) {
  switch (v) {
    case BHAVG_COUNT_WEIGHTED: return CountVariant::weighted;
    case BHAVG_COUNT_OUTER: return CountVariant::outer;
  }
  fail(Errc::invalid_argument, "unknown count variant");
}

bhavg_error_record to_c(const ErrorRecord& r) {
  return {r.spec.ell, r.spec.u, r.X, r.count, r.prediction, r.error, r.sigma, r.m_count};
}

bhavg_complex_value to_c(const ExpSumValue& v) { return {v.value.real(), v.value.imag(), v.terms, v.bound}; }

void put_complex(std::complex<double> v, double* re, double* im) {
  deref(re, "re") = v.real();
  deref(im, "im") = v.imag();
}

}  // namespace

extern "C" {

const char* bhavg_last_error(void) { return g_last_error.c_str(); }

const char* bhavg_status_name(bhavg_status status) {
  switch (status) {
    case BHAVG_OK: return "ok";
    case BHAVG_INVALID_ARGUMENT: return "invalid_argument";
    case BHAVG_RANGE_GUARD: return "range_guard";
    case BHAVG_DOMAIN: return "domain";
    case BHAVG_SINGULAR_FACTOR: return "singular_factor";
    case BHAVG_INTERNAL: return "internal";
    case BHAVG_OUT_OF_MEMORY: return "out_of_memory";
  }
  return "unknown";
}

const char* bhavg_version(void) { return "0.1.0"; }

bhavg_status bhavg_context_create(unsigned threads, bhavg_context** out) {
  return guarded([&] {
    deref(out, "out") = nullptr;
    *out = new bhavg_context{Context(threads)};
  });
}

void bhavg_context_destroy(bhavg_context* ctx) { delete ctx; }

bhavg_status bhavg_context_set_threads(bhavg_context* ctx, unsigned threads) {
  return guarded([&] { deref(ctx, "context").ctx.set_threads(threads); });
}

unsigned bhavg_context_threads(const bhavg_context* ctx) { return ctx == nullptr ? 0 : ctx->ctx.threads(); }

bhavg_status bhavg_is_prime(uint64_t n, int* out) {
  return guarded([&] { deref(out, "out") = is_prime_64(n) ? 1 : 0; });
}

bhavg_status bhavg_von_mangoldt(uint64_t n, uint64_t* prime, double* weight) {
  return guarded([&] {
    require(n >= 1, Errc::invalid_argument, "von_mangoldt: n must be >= 1");
    const PrimePower pp = von_mangoldt_64(n);
    deref(prime, "prime") = pp.p;
    deref(weight, "weight") = pp.weight;
  });
}

bhavg_status bhavg_prime_count(uint64_t limit, uint64_t* out) {
  return guarded([&] {
    require(limit < (u64{1} << 32), Errc::range_guard, "prime_count: limit must be < 2^32");
    deref(out, "out") = sieve_primes(limit).size();
  });
}

bhavg_status bhavg_rho(uint64_t p, int ell, int64_t u, int* out) {
  return guarded([&] { deref(out, "out") = rho(p, make_spec(ell, u)); });
}

bhavg_status bhavg_rho_bruteforce(uint64_t p, int ell, int64_t u, int* out) {
  return guarded([&] { deref(out, "out") = oracle::rho_bruteforce(p, make_spec(ell, u)); });
}

bhavg_status bhavg_power_histogram(uint64_t p, int ell, uint32_t* counts, size_t capacity) {
  return guarded([&] {
    require(ell >= 1, Errc::invalid_argument, "power_histogram: ell must be >= 1");
    require(capacity >= p, Errc::invalid_argument, "power_histogram: capacity below p");
    const auto h = oracle::power_histogram(p, ell);
    std::copy(h.begin(), h.end(), &deref(counts, "counts"));
  });
}

bhavg_status bhavg_lambda_q(uint64_t q, int ell, int64_t u, int64_t* out) {
  return guarded([&] { deref(out, "out") = lambda_q(q, make_spec(ell, u)); });
}

bhavg_status bhavg_A_q(uint64_t q, int ell, int64_t u, int64_t* num, int64_t* den) {
  return guarded([&] {
    const Rational r = A_q(q, make_spec(ell, u));
    deref(num, "num") = r.num;
    deref(den, "den") = r.den;
  });
}

bhavg_status bhavg_A_bruteforce(uint64_t q, int ell, int64_t u, double* re, double* im) {
  return guarded([&] { put_complex(oracle::A_bruteforce(q, make_spec(ell, u)), re, im); });
}

bhavg_status bhavg_lambda_bruteforce(uint64_t q, int ell, int64_t u, double* re, double* im) {
  return guarded([&] { put_complex(oracle::lambda_bruteforce(q, make_spec(ell, u)), re, im); });
}

bhavg_status bhavg_gauss_B(uint64_t q, int64_t a, int ell, double* re, double* im) {
  return guarded([&] { put_complex(gauss_B(q, a, ell), re, im); });
}

bhavg_status bhavg_gauss_Bprime(uint64_t q, int64_t a, int ell, double* re, double* im) {
  return guarded([&] { put_complex(gauss_Bprime(q, a, ell), re, im); });
}

bhavg_status bhavg_is_irreducible(int ell, int64_t u, int* out) {
  return guarded([&] { deref(out, "out") = is_irreducible(make_spec(ell, u)) ? 1 : 0; });
}

bhavg_status bhavg_series(const bhavg_context* ctx, bhavg_series_kind kind, int ell, int64_t u, double cutoff,
                          bhavg_truncated_value* out) {
  return guarded([&] {
    const Context& c = context_of(ctx);
    const PolynomialSpec spec = make_spec(ell, u);
    TruncatedValue v;
    switch (kind) {
      case BHAVG_SERIES_S_PRIME_TRUNC: v = S_prime_trunc(c, spec, cutoff); break;
      case BHAVG_SERIES_S_TRUNC: v = S_trunc(c, spec, cutoff); break;
      case BHAVG_SERIES_P_PRIME_TRUNC: v = P_prime_trunc(c, spec, cutoff); break;
      case BHAVG_SERIES_P_TRUNC: v = P_trunc(c, spec, cutoff); break;
      default: fail(Errc::invalid_argument, "unknown series kind");
    }
    deref(out, "out") = {v.value, to_c(v.method), v.cutoff, v.spec.ell, v.spec.u};
  });
}

bhavg_status bhavg_f_factor(const bhavg_context* ctx, int ell, int64_t u, double cutoff, double* out) {
  return guarded([&] { deref(out, "out") = f_factor(context_of(ctx), make_spec(ell, u), cutoff); });
}

bhavg_status bhavg_rho_deficit_sum(const bhavg_context* ctx, int ell, int64_t u, double cutoff, double* sum,
                                   double* shape) {
  return guarded([&] {
    const PolynomialSpec spec = make_spec(ell, u);
    deref(sum, "sum") = rho_deficit_sum(context_of(ctx), spec, cutoff);
    if (shape != nullptr) *shape = rho_deficit_shape(spec);
  });
}

bhavg_status bhavg_crude_bound(const bhavg_context* ctx, int ell, int64_t u_max, double cutoff,
                               bhavg_crude_bound_report* out) {
  return guarded([&] {
    const CrudeBoundReport r = crude_bound_report(context_of(ctx), ell, u_max, cutoff);
    deref(out, "out") = {r.max_sigma, r.argmax_sigma, r.max_sigma_prime, r.argmax_sigma_prime, r.log_power_shape};
  });
}

bhavg_status bhavg_count(const bhavg_context* ctx, bhavg_count_variant variant, int ell, int64_t u, uint64_t X,
                         double* out) {
  return guarded([&] {
    const Context& c = context_of(ctx);
    const PolynomialSpec spec = make_spec(ell, u);
    deref(out, "out") = from_c(variant) == CountVariant::weighted ? count_weighted(c, spec, X)
                                                                  : count_outer(c, spec, X);
  });
}

bhavg_status bhavg_error_record_compute(const bhavg_context* ctx, bhavg_count_variant variant, int ell, int64_t u,
                                        uint64_t X, double sigma_cutoff, bhavg_error_record* out) {
  return guarded([&] {
    deref(out, "out") = to_c(error_record(context_of(ctx), make_spec(ell, u), X, sigma_cutoff, from_c(variant)));
  });
}

bhavg_status bhavg_dyadic_blocks(uint64_t X, double B, int ell, bhavg_dyadic_block* blocks, size_t capacity,
                                 size_t* count, uint64_t* cut) {
  return guarded([&] {
    const DyadicCover cover = dyadic_blocks(X, B, ell);
    if (capacity > 0) deref(blocks, "blocks");
    for (size_t i = 0; i < cover.blocks.size() && i < capacity; ++i)
      blocks[i] = {cover.blocks[i].lo, cover.blocks[i].hi, cover.blocks[i].z};
    deref(count, "count") = cover.blocks.size();
    if (cut != nullptr) *cut = cover.cut;
  });
}

bhavg_status bhavg_variance_run(const bhavg_context* ctx, bhavg_count_variant variant, int ell, uint64_t y,
                                uint64_t X, double sigma_cutoff, bhavg_variance** out) {
  return guarded([&] {
    deref(out, "out") = nullptr;
    auto v = std::make_unique<bhavg_variance>();
    v->report = variance(context_of(ctx), ell, y, X, sigma_cutoff, from_c(variant));
    *out = v.release();
  });
}

void bhavg_variance_destroy(bhavg_variance* v) { delete v; }

bhavg_status bhavg_variance_summary_get(const bhavg_variance* v, bhavg_variance_summary* out) {
  return guarded([&] {
    const VarianceReport& r = deref(v, "variance").report;
    const Quantiles& q = r.per_u_quantiles;
    bhavg_variance_summary& s = deref(out, "out");
    s.ell = r.ell;
    s.y = r.y;
    s.X = r.X;
    s.variant = r.variant == CountVariant::weighted ? BHAVG_COUNT_WEIGHTED : BHAVG_COUNT_OUTER;
    s.sigma_cutoff = r.sigma_cutoff;
    s.S = r.S;
    s.normalized = r.normalized;
    s.n_obstructed = r.n_obstructed;
    s.S_unobstructed = r.S_unobstructed;
    s.normalized_unobstructed = r.normalized_unobstructed;
    s.per_u_quantiles = {q.min, q.p25, q.median, q.p75, q.p90, q.max, q.mean};
    s.record_count = r.records.size();
  });
}

bhavg_status bhavg_variance_record(const bhavg_variance* v, size_t index, bhavg_error_record* out) {
  return guarded([&] {
    const VarianceReport& r = deref(v, "variance").report;
    require(index < r.records.size(), Errc::invalid_argument, "variance record index out of range");
    deref(out, "out") = to_c(r.records[index]);
  });
}

bhavg_status bhavg_meansquare_truncation(const bhavg_context* ctx, int ell, int64_t v, uint64_t y, double z,
                                         double ref_cutoff, bhavg_truncation_route route, double* out) {
  return guarded([&] {
    require(route == BHAVG_ROUTE_DIRICHLET_SUM || route == BHAVG_ROUTE_EULER_PRODUCT, Errc::invalid_argument,
            "unknown truncation route");
    const TruncationRoute r =
        route == BHAVG_ROUTE_DIRICHLET_SUM ? TruncationRoute::dirichlet_sum : TruncationRoute::euler_product;
    deref(out, "out") = meansquare_truncation(context_of(ctx), ell, v, y, z, ref_cutoff, r);
  });
}

bhavg_status bhavg_product_vs_sum(const bhavg_context* ctx, int ell, uint64_t y, double x, double* max_abs,
                                  double* mean_abs) {
  return guarded([&] {
    const auto [mx, mean] = product_vs_sum_discrepancy(context_of(ctx), ell, y, x);
    deref(max_abs, "max_abs") = mx;
    deref(mean_abs, "mean_abs") = mean;
  });
}

bhavg_status bhavg_expsum(const bhavg_context* ctx, bhavg_expsum_kind kind, bhavg_angle alpha, double z, int ell,
                          bhavg_complex_value* out) {
  return guarded([&] {
    ExpSumKind k;
    switch (kind) {
      case BHAVG_EXPSUM_I: k = ExpSumKind::I; break;
      case BHAVG_EXPSUM_J: k = ExpSumKind::J; break;
      case BHAVG_EXPSUM_I_ELL: k = ExpSumKind::I_ell; break;
      case BHAVG_EXPSUM_J_ELL: k = ExpSumKind::J_ell; break;
      default: fail(Errc::invalid_argument, "unknown exponential sum kind");
    }
    deref(out, "out") = to_c(eval_expsum(context_of(ctx), k, make_angle(alpha), z, ell));
  });
}

bhavg_status bhavg_major_residual(const bhavg_context* ctx, uint64_t q, int64_t a, double beta, double z, int ell,
                                  bhavg_complex_value* r_ell, bhavg_complex_value* r_ell_prime) {
  return guarded([&] {
    const MajorResidual r = major_residual(context_of(ctx), q, a, beta, z, ell);
    deref(r_ell, "r_ell") = to_c(r.R_ell);
    deref(r_ell_prime, "r_ell_prime") = to_c(r.R_ell_prime);
  });
}

bhavg_status bhavg_major_residual_linear(const bhavg_context* ctx, uint64_t q, int64_t a, double beta, double z,
                                         int ell, bhavg_complex_value* out) {
  return guarded([&] { deref(out, "out") = to_c(major_residual_linear(context_of(ctx), q, a, beta, z, ell)); });
}

bhavg_status bhavg_circle_integral(const bhavg_context* ctx, int ell, int64_t u, double z, double* out) {
  return guarded([&] { deref(out, "out") = circle_integral(context_of(ctx), make_spec(ell, u), z); });
}

bhavg_status bhavg_convolution_count(int ell, int64_t u, double z, double* out) {
  return guarded([&] { deref(out, "out") = oracle::convolution_count(make_spec(ell, u), z); });
}

bhavg_status bhavg_parseval(const bhavg_context* ctx, int ell, double z, double* dft_mean, double* direct) {
  return guarded([&] {
    const CircleSampler sampler(context_of(ctx), ell, z, 0);
    const auto [mean, sum] = sampler.parseval();
    deref(dft_mean, "dft_mean") = mean;
    deref(direct, "direct") = sum;
  });
}

bhavg_status bhavg_arcs_build(uint64_t X, double exponent, bhavg_arcs** out) {
  return guarded([&] {
    deref(out, "out") = nullptr;
    *out = new bhavg_arcs{ArcPartition(X, exponent), std::nullopt};
  });
}

void bhavg_arcs_destroy(bhavg_arcs* arcs) { delete arcs; }

bhavg_status bhavg_arcs_info_get(const bhavg_arcs* arcs, bhavg_arcs_info* out) {
  return guarded([&] {
    const ArcPartition& p = deref(arcs, "arcs").partition;
    deref(out, "out") = {p.X(),         p.exponent(),  p.L(),
                         p.Q(),         p.q_max(),     static_cast<double>(p.delta()),
                         p.arc_count(), static_cast<double>(p.measure())};
  });
}

bhavg_status bhavg_arcs_get(bhavg_arcs* arcs, uint64_t index, bhavg_arc* out) {
  return guarded([&] {
    bhavg_arcs& a = deref(arcs, "arcs");
    if (!a.arcs) a.arcs = a.partition.arcs();
    require(index < a.arcs->size(), Errc::invalid_argument, "arc index out of range");
    const MajorArc& arc = (*a.arcs)[index];
    deref(out, "out") = {arc.q, arc.a, static_cast<double>(arc.lo), static_cast<double>(arc.hi)};
  });
}

bhavg_status bhavg_arcs_measure_direct(bhavg_arcs* arcs, double* out) {
  return guarded([&] { deref(out, "out") = static_cast<double>(deref(arcs, "arcs").partition.measure_direct()); });
}

bhavg_status bhavg_arcs_classify(const bhavg_arcs* arcs, bhavg_angle alpha, bhavg_arc_class* out) {
  return guarded([&] {
    const ArcClass c = deref(arcs, "arcs").partition.classify(make_angle(alpha));
    deref(out, "out") = {c.major ? 1 : 0, c.q, c.a};
  });
}

bhavg_status bhavg_verify(const bhavg_context* ctx, const char* suite, bhavg_verify_result* out) {
  return guarded([&] {
    const VerifyResult r = run_verify(context_of(ctx), parse_verify_suite(&deref(suite, "suite")));
    bhavg_verify_result& o = deref(out, "out");
    o.checks = r.checks;
    o.mismatches = r.mismatches;
    std::memset(o.first_failure, 0, sizeof o.first_failure);
    std::strncpy(o.first_failure, r.first_failure.c_str(), sizeof o.first_failure - 1);
  });
}

}  // extern "C"
