// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "binomci/exact_cp.hpp"

#include <atomic>
#include <cmath>

#include "binomci/massart.hpp"

namespace binomci {

namespace {

constexpr double kTiny = 1e-16;

std::atomic<long> g_bracket_fallbacks{0};

// S(N, j, p) = Pr{K <= j}, the left-hand side of both defining
// equations; strictly decreasing in p.
double cdf_at(long trials, long j, double p) {
  return binom_cdf(BinomialSpec(trials, p), j);
}

// Bisect the decreasing function p -> cdf_at(trials, j, p) - target to
// absolute x-accuracy tol, then polish with a few safeguarded Newton
// steps (dS/dp = -N pmf(j; N-1, p)).  Bisection alone leaves a residual
// of (slope x tol), which at N = 1000 can reach ~3e-8; the polish takes
// the residual down to slope x eps.  The bracket must satisfy
// f(lo) >= 0 >= f(hi); callers fall back to the unit bracket when the
// seeded one fails.
double bisect(long trials, long j, double target, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at fp resolution
    if (cdf_at(trials, j, mid) - target > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; trials >= 2 && it < 3; ++it) {
    double f = cdf_at(trials, j, x) - target;
    if (f == 0.0) break;
    double slope =
        -double(trials) * std::exp(log_binom_pmf(BinomialSpec(trials - 1, x), j));
    if (slope == 0.0) break;
    double next = x - f / slope;
    if (!(next > lo && next < hi)) break;  // stay inside the proven bracket
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace

double cp_lower(const ConfidenceQuery& query, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("tol must be > 0");
  if (query.successes == 0) return 0.0;

  const long n = query.trials;
  const long k = query.successes;
  const double target = 1.0 - query.delta / 2.0;

  Interval seed = massart_limits(query, rigorous_theta(query.delta));
  double lo = std::max(seed.raw_lower, kTiny);
  double hi = double(k) / double(n);
  if (!(lo < hi && cdf_at(n, k - 1, lo) - target >= 0.0)) {
    g_bracket_fallbacks.fetch_add(1, std::memory_order_relaxed);
    lo = kTiny;
    hi = 1.0 - kTiny;
  }
  return bisect(n, k - 1, target, lo, hi, tol);
}

double cp_upper(const ConfidenceQuery& query, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("tol must be > 0");
  if (query.successes == query.trials) return 1.0;

  const long n = query.trials;
  const long k = query.successes;
  const double target = query.delta / 2.0;

  Interval seed = massart_limits(query, rigorous_theta(query.delta));
  double lo = double(k) / double(n);
  double hi = std::min(seed.raw_upper, 1.0 - kTiny);
  if (!(lo < hi && cdf_at(n, k, hi) - target <= 0.0)) {
    g_bracket_fallbacks.fetch_add(1, std::memory_order_relaxed);
    lo = kTiny;
    hi = 1.0 - kTiny;
  }
  return bisect(n, k, target, lo, hi, tol);
}

Interval cp_interval(const ConfidenceQuery& query, double tol) {
  double lo = cp_lower(query, tol);
  double hi = cp_upper(query, tol);
  return Interval{lo, hi, lo, hi, Method::ClopperPearson};
}

long cp_bracket_fallbacks() {
  return g_bracket_fallbacks.load(std::memory_order_relaxed);
}

}  // namespace binomci
