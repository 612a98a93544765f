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

#ifndef BHAVG_BHAVG_H
#define BHAVG_BHAVG_H

#include <stddef.h>
#include <stdint.h>

#if defined(BHAVG_BUILDING)
#define BHAVG_API __attribute__((visibility("default")))
#else
#define BHAVG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bhavg_status {
  BHAVG_OK = 0,
  BHAVG_INVALID_ARGUMENT = 1,
  BHAVG_RANGE_GUARD = 2,
  BHAVG_DOMAIN = 3,
  BHAVG_SINGULAR_FACTOR = 4,
  BHAVG_INTERNAL = 5,
  BHAVG_OUT_OF_MEMORY = 6,
} bhavg_status;

/* Message for the last failing call on this thread; "" after success. */
BHAVG_API const char* bhavg_last_error(void);
BHAVG_API const char* bhavg_status_name(bhavg_status status);
BHAVG_API const char* bhavg_version(void);

/* Shared prime and von Mangoldt tables plus the worker count.
   threads == 0 selects the available parallelism. */
typedef struct bhavg_context bhavg_context;
BHAVG_API bhavg_status bhavg_context_create(unsigned threads, bhavg_context** out);
BHAVG_API void bhavg_context_destroy(bhavg_context* ctx);
BHAVG_API bhavg_status bhavg_context_set_threads(bhavg_context* ctx, unsigned threads);
BHAVG_API unsigned bhavg_context_threads(const bhavg_context* ctx);

/* arithmetic */
BHAVG_API bhavg_status bhavg_is_prime(uint64_t n, int* out);
BHAVG_API bhavg_status bhavg_von_mangoldt(uint64_t n, uint64_t* prime, double* weight);
BHAVG_API bhavg_status bhavg_prime_count(uint64_t limit, uint64_t* out);

/* local densities for x^ell + u */
BHAVG_API bhavg_status bhavg_rho(uint64_t p, int ell, int64_t u, int* out);
BHAVG_API bhavg_status bhavg_rho_bruteforce(uint64_t p, int ell, int64_t u, int* out);
/* counts[r] = #{x mod p : x^ell = r}, by enumeration; capacity must be >= p. */
BHAVG_API bhavg_status bhavg_power_histogram(uint64_t p, int ell, uint32_t* counts, size_t capacity);
BHAVG_API bhavg_status bhavg_lambda_q(uint64_t q, int ell, int64_t u, int64_t* out);
BHAVG_API bhavg_status bhavg_A_q(uint64_t q, int ell, int64_t u, int64_t* num, int64_t* den);
BHAVG_API bhavg_status bhavg_A_bruteforce(uint64_t q, int ell, int64_t u, double* re, double* im);
BHAVG_API bhavg_status bhavg_lambda_bruteforce(uint64_t q, int ell, int64_t u, double* re, double* im);
BHAVG_API bhavg_status bhavg_gauss_B(uint64_t q, int64_t a, int ell, double* re, double* im);
BHAVG_API bhavg_status bhavg_gauss_Bprime(uint64_t q, int64_t a, int ell, double* re, double* im);
BHAVG_API bhavg_status bhavg_is_irreducible(int ell, int64_t u, int* out);

/* singular series */
typedef enum bhavg_series_kind {
  BHAVG_SERIES_S_PRIME_TRUNC = 0, /* sum over q <= z of mu(q) lambda(q,u) / phi(q) */
  BHAVG_SERIES_S_TRUNC = 1,       /* sum over q <= z of mu(q) A(q,u) / phi(q) */
  BHAVG_SERIES_P_PRIME_TRUNC = 2, /* outer Euler product over p <= P */
  BHAVG_SERIES_P_TRUNC = 3,       /* full Euler product over p <= P */
} bhavg_series_kind;

typedef enum bhavg_series_method {
  BHAVG_METHOD_DIRICHLET_SUM = 0,
  BHAVG_METHOD_EULER_PRODUCT = 1,
  BHAVG_METHOD_COMBINED_FACTOR_PRODUCT = 2,
} bhavg_series_method;

typedef struct bhavg_truncated_value {
  double value;
  bhavg_series_method method;
  double cutoff;
  int ell;
  int64_t u;
} bhavg_truncated_value;

BHAVG_API bhavg_status bhavg_series(const bhavg_context* ctx, bhavg_series_kind kind, int ell, int64_t u,
                                    double cutoff, bhavg_truncated_value* out);
BHAVG_API bhavg_status bhavg_f_factor(const bhavg_context* ctx, int ell, int64_t u, double cutoff, double* out);
BHAVG_API bhavg_status bhavg_rho_deficit_sum(const bhavg_context* ctx, int ell, int64_t u, double cutoff,
                                             double* sum, double* shape);

typedef struct bhavg_crude_bound {
  double max_sigma;
  int64_t argmax_sigma;
  double max_sigma_prime;
  int64_t argmax_sigma_prime;
  double log_power_shape;
} bhavg_crude_bound_report;
BHAVG_API bhavg_status bhavg_crude_bound(const bhavg_context* ctx, int ell, int64_t u_max, double cutoff,
                                         bhavg_crude_bound_report* out);

/* weighted counts */
typedef enum bhavg_count_variant {
  BHAVG_COUNT_WEIGHTED = 0, /* sum Lambda(m) Lambda(m^ell + u), predicted by sigma */
  BHAVG_COUNT_OUTER = 1,    /* sum Lambda(m^ell + u), predicted by sigma' */
} bhavg_count_variant;

typedef struct bhavg_error_record {
  int ell;
  int64_t u;
  uint64_t X;
  double count;
  double prediction;
  double error;
  double sigma;
  uint64_t m_count;
} bhavg_error_record;

BHAVG_API bhavg_status bhavg_count(const bhavg_context* ctx, bhavg_count_variant variant, int ell, int64_t u,
                                   uint64_t X, double* out);
BHAVG_API bhavg_status bhavg_error_record_compute(const bhavg_context* ctx, bhavg_count_variant variant, int ell,
                                                  int64_t u, uint64_t X, double sigma_cutoff,
                                                  bhavg_error_record* out);

typedef struct bhavg_dyadic_block {
  uint64_t lo; /* (lo, hi] in m^ell */
  uint64_t hi;
  double z;
} bhavg_dyadic_block;
/* Fills up to capacity blocks; *count receives the total. *cut is the head boundary. */
BHAVG_API bhavg_status bhavg_dyadic_blocks(uint64_t X, double B, int ell, bhavg_dyadic_block* blocks,
                                           size_t capacity, size_t* count, uint64_t* cut);

/* variance statistics */
typedef struct bhavg_quantiles {
  double min, p25, median, p75, p90, max, mean;
} bhavg_quantiles;

typedef struct bhavg_variance_summary {
  int ell;
  uint64_t y;
  uint64_t X;
  bhavg_count_variant variant;
  double sigma_cutoff;
  double S;
  double normalized;
  uint64_t n_obstructed;
  double S_unobstructed;
  double normalized_unobstructed;
  bhavg_quantiles per_u_quantiles;
  size_t record_count;
} bhavg_variance_summary;

typedef struct bhavg_variance bhavg_variance;
BHAVG_API bhavg_status bhavg_variance_run(const bhavg_context* ctx, bhavg_count_variant variant, int ell,
                                          uint64_t y, uint64_t X, double sigma_cutoff, bhavg_variance** out);
BHAVG_API void bhavg_variance_destroy(bhavg_variance* v);
BHAVG_API bhavg_status bhavg_variance_summary_get(const bhavg_variance* v, bhavg_variance_summary* out);
BHAVG_API bhavg_status bhavg_variance_record(const bhavg_variance* v, size_t index, bhavg_error_record* out);

typedef enum bhavg_truncation_route {
  BHAVG_ROUTE_DIRICHLET_SUM = 0,
  BHAVG_ROUTE_EULER_PRODUCT = 1,
} bhavg_truncation_route;
BHAVG_API bhavg_status bhavg_meansquare_truncation(const bhavg_context* ctx, int ell, int64_t v, uint64_t y,
                                                   double z, double ref_cutoff, bhavg_truncation_route route,
                                                   double* out);
BHAVG_API bhavg_status bhavg_product_vs_sum(const bhavg_context* ctx, int ell, uint64_t y, double x,
                                            double* max_abs, double* mean_abs);

/* exponential sums; an angle is num/den + real (turns) */
typedef struct bhavg_angle {
  int64_t num;
  uint64_t den;  /* >= 1 */
  double real;   /* added to num/den; 0 for an exact rational */
} bhavg_angle;

typedef enum bhavg_expsum_kind {
  BHAVG_EXPSUM_I = 0,     /* sum_{m <= 2^ell z} e(-m alpha) */
  BHAVG_EXPSUM_J = 1,     /* sum_{m <= 2^ell z} Lambda(m) e(-m alpha) */
  BHAVG_EXPSUM_I_ELL = 2, /* sum_{z < m^ell <= 2^ell z} e(m^ell alpha) */
  BHAVG_EXPSUM_J_ELL = 3, /* sum_{z < m^ell <= 2^ell z} Lambda(m) e(m^ell alpha) */
} bhavg_expsum_kind;

typedef struct bhavg_complex_value {
  double re;
  double im;
  uint64_t terms;
  double bound;
} bhavg_complex_value;

BHAVG_API bhavg_status bhavg_expsum(const bhavg_context* ctx, bhavg_expsum_kind kind, bhavg_angle alpha, double z,
                                    int ell, bhavg_complex_value* out);
BHAVG_API bhavg_status bhavg_major_residual(const bhavg_context* ctx, uint64_t q, int64_t a, double beta, double z,
                                            int ell, bhavg_complex_value* r_ell, bhavg_complex_value* r_ell_prime);
BHAVG_API bhavg_status bhavg_major_residual_linear(const bhavg_context* ctx, uint64_t q, int64_t a, double beta,
                                                   double z, int ell, bhavg_complex_value* out);
BHAVG_API bhavg_status bhavg_circle_integral(const bhavg_context* ctx, int ell, int64_t u, double z, double* out);
BHAVG_API bhavg_status bhavg_convolution_count(int ell, int64_t u, double z, double* out);
/* (1/N) sum |J_ell(k/N)|^2 and sum Lambda(m)^2 over the block */
BHAVG_API bhavg_status bhavg_parseval(const bhavg_context* ctx, int ell, double z, double* dft_mean,
                                      double* direct);

/* major arcs */
typedef struct bhavg_arcs bhavg_arcs;
typedef struct bhavg_arcs_info {
  uint64_t X;
  double exponent;
  double L;
  double Q;
  uint64_t q_max;
  double delta;
  uint64_t arc_count;
  double measure;
} bhavg_arcs_info;
typedef struct bhavg_arc {
  uint64_t q;
  uint64_t a;
  double lo; /* (lo, hi] */
  double hi;
} bhavg_arc;
typedef struct bhavg_arc_class {
  int major;
  uint64_t q;
  uint64_t a;
} bhavg_arc_class;

BHAVG_API bhavg_status bhavg_arcs_build(uint64_t X, double exponent, bhavg_arcs** out);
BHAVG_API void bhavg_arcs_destroy(bhavg_arcs* arcs);
BHAVG_API bhavg_status bhavg_arcs_info_get(const bhavg_arcs* arcs, bhavg_arcs_info* out);
/* Arcs in increasing order of a/q; materialised on first use. */
BHAVG_API bhavg_status bhavg_arcs_get(bhavg_arcs* arcs, uint64_t index, bhavg_arc* out);
BHAVG_API bhavg_status bhavg_arcs_measure_direct(bhavg_arcs* arcs, double* out);
BHAVG_API bhavg_status bhavg_arcs_classify(const bhavg_arcs* arcs, bhavg_angle alpha, bhavg_arc_class* out);

/* oracle self-check: suite is "local", "series", "circle" or "all" */
typedef struct bhavg_verify_result {
  uint64_t checks;
  uint64_t mismatches;
  char first_failure[256];
} bhavg_verify_result;
BHAVG_API bhavg_status bhavg_verify(const bhavg_context* ctx, const char* suite, bhavg_verify_result* out);

#ifdef __cplusplus
}
#endif

#endif /* BHAVG_BHAVG_H */
