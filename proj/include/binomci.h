/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

/*
 * binomci — binomial-proportion confidence intervals with guaranteed
 * coverage, exposed as a C API over the C++ core.
 *
 * Conventions:
 *   - Every function returns a bci_status; results go through out
 *     pointers.  BCI_OK is zero.
 *   - bci_interval_set is an opaque handle holding the N+1 intervals
 *     of one method at fixed (N, delta); coverage evaluation reuses it
 *     across an entire p-sweep.
 *   - All functions are thread-safe; handles are immutable after
 *     creation and may be shared across threads.
 */

#ifndef BINOMCI_H
#define BINOMCI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bci_status {
  BCI_OK = 0,
  BCI_ERR_DOMAIN = 1,     /* argument outside its domain */
  BCI_ERR_CONFIG = 2,     /* bad method name / missing tuned theta */
  BCI_ERR_INFEASIBLE = 3, /* tuning constraint cannot be met */
  BCI_ERR_INTERNAL = 4
} bci_status;

typedef enum bci_method {
  BCI_METHOD_CP = 0,       /* exact Clopper-Pearson */
  BCI_METHOD_RIGOROUS = 1, /* explicit limits, theta = 9/(8 ln(2/delta)) */
  BCI_METHOD_TUNED = 2,    /* explicit limits, tuned theta */
  BCI_METHOD_WALD = 3,
  BCI_METHOD_WILSON = 4
} bci_method;

/* Containment convention used when evaluating coverage. */
typedef enum bci_convention {
  BCI_CONVENTION_CLOSED = 0,
  BCI_CONVENTION_STRICT = 1
} bci_convention;

typedef struct bci_interval {
  double lower;      /* clamped to [0,1] */
  double upper;
  double raw_lower;  /* formula value before clamping */
  double raw_upper;
} bci_interval;

typedef struct bci_coverage_record {
  double coverage;
  double error_prob;
  double mean_width;
  int convention; /* bci_convention */
} bci_coverage_record;

const char* bci_strerror(bci_status status);
const char* bci_method_name(bci_method method);
bci_status bci_method_parse(const char* name, bci_method* out);

/* ---- distribution primitives ---- */

/* ln[ C(n,k) p^k (1-p)^(n-k) ]; -inf for zero-probability outcomes. */
bci_status bci_log_binom_pmf(long n, double p, long k, double* out);

/* Pr{K <= k} for K ~ Binomial(n, p). */
bci_status bci_binom_cdf(long n, double p, long k, double* out);

/* Pr{K >= k}, summed directly for full accuracy in the far tail. */
bci_status bci_binom_upper_tail(long n, double p, long k, double* out);

/* z with Phi(z) = 1 - delta_half; delta_half in (0, 0.5). */
bci_status bci_normal_quantile(double delta_half, double* out);

/* ---- interval construction ---- */

/* theta = 9 / (8 ln(2/delta)). */
bci_status bci_rigorous_theta(double delta, double* out);

/* One interval by the named method.  tol is the Clopper-Pearson
 * bisection accuracy; other methods ignore it.  The tuned method only
 * accepts delta in {0.05, 0.01, 0.001} (BCI_ERR_CONFIG otherwise). */
bci_status bci_interval_compute(bci_method method, long n, long k, double delta,
                                double tol, bci_interval* out);

/* Explicit limits with a caller-supplied theta. */
bci_status bci_massart_interval(long n, long k, double theta, bci_interval* out);

/* ---- concentration bounds ---- */

/* Upper bound on Pr{K/n >= p + eps}; 1 when vacuous. */
bci_status bci_massart_upper_tail(long n, double p, double eps, double* out);

/* Upper bound on Pr{K/n <= p - eps}; 1 when vacuous. */
bci_status bci_massart_lower_tail(long n, double p, double eps, double* out);

/* Bound on Pr{K <= k} at parameter x, x in (k/n, 1). */
bci_status bci_cdf_upper_bound(long n, long k, double x, double* out);

/* Bound on Pr{K < k} at parameter x, x in (0, k/n), k >= 1. */
bci_status bci_cdf_lower_bound(long n, long k, double x, double* out);

/* ---- coverage evaluation ---- */

typedef struct bci_interval_set bci_interval_set;

/* All n+1 intervals of `method` at (n, delta). */
bci_status bci_interval_set_create(bci_method method, long n, double delta,
                                   double tol, bci_interval_set** out);

/* Explicit limits with a custom theta (tuned provenance). */
bci_status bci_interval_set_create_theta(long n, double delta, double theta,
                                         bci_interval_set** out);

void bci_interval_set_destroy(bci_interval_set* set);

bci_status bci_interval_set_get(const bci_interval_set* set, long k,
                                bci_interval* out);

/* Exact coverage at true parameter p by enumeration over k. */
bci_status bci_interval_set_coverage(const bci_interval_set* set, double p,
                                     bci_coverage_record* out);

/* Empirical coverage from `samples` seeded binomial draws. */
bci_status bci_interval_set_mc_coverage(const bci_interval_set* set, double p,
                                        long samples, uint64_t seed,
                                        bci_coverage_record* out);

/* ---- theta tuning ---- */

/* Largest theta keeping exact coverage >= 1-delta over the grids;
 * bisection over theta to accuracy tol.  binding_n / binding_p receive
 * the cell that pins theta* (may be NULL). */
bci_status bci_tune_theta(const long* n_set, size_t n_count, double delta,
                          const double* p_grid, size_t p_count, double tol,
                          double* theta_star, long* binding_n,
                          double* binding_p, double* min_coverage);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BINOMCI_H */
