// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "binomci.h"

#include <new>
#include <optional>

#include "binomci/approx.hpp"
#include "binomci/binom_core.hpp"
#include "binomci/coverage.hpp"
#include "binomci/exact_cp.hpp"
#include "binomci/massart.hpp"

using namespace binomci;

struct bci_interval_set {
  IntervalSet impl;
};

namespace {

template <typename Fn>
bci_status guarded(Fn&& fn) {
  try {
    fn();
    return BCI_OK;
  } catch (const ConfigError&) {
    return BCI_ERR_CONFIG;
  } catch (const InfeasibleError&) {
    return BCI_ERR_INFEASIBLE;
  } catch (const std::domain_error&) {
    return BCI_ERR_DOMAIN;
  } catch (const std::invalid_argument&) {
    return BCI_ERR_DOMAIN;
  } catch (...) {
    return BCI_ERR_INTERNAL;
  }
}

Method to_method(bci_method m) {
  switch (m) {
    case BCI_METHOD_CP: return Method::ClopperPearson;
    case BCI_METHOD_RIGOROUS: return Method::MassartRigorous;
    case BCI_METHOD_TUNED: return Method::MassartTuned;
    case BCI_METHOD_WALD: return Method::Wald;
    case BCI_METHOD_WILSON: return Method::Wilson;
  }
  throw ConfigError("bad method id");
}

bci_interval to_c(const Interval& iv) {
  return bci_interval{iv.lower, iv.upper, iv.raw_lower, iv.raw_upper};
}

bci_coverage_record to_c(const CoverageRecord& r) {
  return bci_coverage_record{
      r.coverage, r.error_prob, r.mean_width,
      r.convention == Convention::StrictInterior ? BCI_CONVENTION_STRICT
                                                 : BCI_CONVENTION_CLOSED};
}

}  // namespace

extern "C" {

const char* bci_strerror(bci_status status) {
  switch (status) {
    case BCI_OK: return "ok";
    case BCI_ERR_DOMAIN: return "argument outside its domain";
    case BCI_ERR_CONFIG: return "invalid configuration";
    case BCI_ERR_INFEASIBLE: return "constraint infeasible";
    case BCI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bci_method_name(bci_method method) {
  switch (method) {
    case BCI_METHOD_CP: return "cp";
    case BCI_METHOD_RIGOROUS: return "rigorous";
    case BCI_METHOD_TUNED: return "tuned";
    case BCI_METHOD_WALD: return "wald";
    case BCI_METHOD_WILSON: return "wilson";
  }
  return "?";
}

bci_status bci_method_parse(const char* name, bci_method* out) {
  if (!name || !out) return BCI_ERR_DOMAIN;
  return guarded([&] {
    Method m = parse_method(name);
    switch (m) {
      case Method::ClopperPearson: *out = BCI_METHOD_CP; break;
      case Method::MassartRigorous: *out = BCI_METHOD_RIGOROUS; break;
      case Method::MassartTuned: *out = BCI_METHOD_TUNED; break;
      case Method::Wald: *out = BCI_METHOD_WALD; break;
      case Method::Wilson: *out = BCI_METHOD_WILSON; break;
    }
  });
}

bci_status bci_log_binom_pmf(long n, double p, long k, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = log_binom_pmf(BinomialSpec(n, p), k); });
}

bci_status bci_binom_cdf(long n, double p, long k, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = binom_cdf(BinomialSpec(n, p), k); });
}

bci_status bci_binom_upper_tail(long n, double p, long k, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = binom_upper_tail(BinomialSpec(n, p), k); });
}

bci_status bci_normal_quantile(double delta_half, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = normal_quantile(delta_half); });
}

bci_status bci_rigorous_theta(double delta, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = rigorous_theta(delta).theta; });
}

bci_status bci_interval_compute(bci_method method, long n, long k, double delta,
                                double tol, bci_interval* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] {
    ConfidenceQuery query(n, k, delta);
    Interval iv{0, 0, 0, 0, Method::ClopperPearson};
    switch (to_method(method)) {
      case Method::ClopperPearson: iv = cp_interval(query, tol); break;
      case Method::MassartRigorous:
        iv = massart_limits(query, rigorous_theta(delta));
        break;
      case Method::MassartTuned: iv = tuned_interval(query); break;
      case Method::Wald: iv = wald_interval(query); break;
      case Method::Wilson: iv = wilson_interval(query); break;
    }
    *out = to_c(iv);
  });
}

bci_status bci_massart_interval(long n, long k, double theta, bci_interval* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] {
    // delta only tags provenance here; 0.5 is a placeholder.
    ConfidenceQuery query(n, k, 0.5);
    *out = to_c(massart_limits(query, tuned_theta(theta, 0.5)));
  });
}

bci_status bci_massart_upper_tail(long n, double p, double eps, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = massart_upper_tail(TailQuery(BinomialSpec(n, p), eps)); });
}

bci_status bci_massart_lower_tail(long n, double p, double eps, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = massart_lower_tail(TailQuery(BinomialSpec(n, p), eps)); });
}

bci_status bci_cdf_upper_bound(long n, long k, double x, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = cdf_upper_bound(n, k, x); });
}

bci_status bci_cdf_lower_bound(long n, long k, double x, double* out) {
  if (!out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = cdf_lower_bound(n, k, x); });
}

bci_status bci_interval_set_create(bci_method method, long n, double delta,
                                   double tol, bci_interval_set** out) {
  if (!out) return BCI_ERR_DOMAIN;
  *out = nullptr;
  return guarded([&] {
    *out = new bci_interval_set{IntervalSet::make(to_method(method), n, delta, tol)};
  });
}

bci_status bci_interval_set_create_theta(long n, double delta, double theta,
                                         bci_interval_set** out) {
  if (!out) return BCI_ERR_DOMAIN;
  *out = nullptr;
  return guarded([&] {
    *out = new bci_interval_set{
        IntervalSet::make_massart(n, tuned_theta(theta, delta))};
  });
}

void bci_interval_set_destroy(bci_interval_set* set) { delete set; }

bci_status bci_interval_set_get(const bci_interval_set* set, long k,
                                bci_interval* out) {
  if (!set || !out) return BCI_ERR_DOMAIN;
  if (k < 0 || k > set->impl.trials()) return BCI_ERR_DOMAIN;
  *out = to_c(set->impl.at(k));
  return BCI_OK;
}

bci_status bci_interval_set_coverage(const bci_interval_set* set, double p,
                                     bci_coverage_record* out) {
  if (!set || !out) return BCI_ERR_DOMAIN;
  return guarded([&] { *out = to_c(exact_coverage(set->impl, p)); });
}

bci_status bci_interval_set_mc_coverage(const bci_interval_set* set, double p,
                                        long samples, uint64_t seed,
                                        bci_coverage_record* out) {
  if (!set || !out) return BCI_ERR_DOMAIN;
  return guarded([&] {
    *out = to_c(monte_carlo_coverage(set->impl, p, samples, seed));
  });
}

bci_status bci_tune_theta(const long* n_set, size_t n_count, double delta,
                          const double* p_grid, size_t p_count, double tol,
                          double* theta_star, long* binding_n,
                          double* binding_p, double* min_coverage) {
  if (!n_set || !p_grid || !theta_star || n_count == 0 || p_count == 0) {
    return BCI_ERR_DOMAIN;
  }
  return guarded([&] {
    ThetaTuneResult r = tune_theta(std::vector<long>(n_set, n_set + n_count),
                                   delta,
                                   std::vector<double>(p_grid, p_grid + p_count),
                                   tol);
    *theta_star = r.config.theta;
    if (binding_n) *binding_n = r.binding_trials;
    if (binding_p) *binding_p = r.binding_p;
    if (min_coverage) *min_coverage = r.min_coverage;
  });
}

}  // extern "C"
