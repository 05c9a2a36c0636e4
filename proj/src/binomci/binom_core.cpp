// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "binomci/binom_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace binomci {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_choose(long n, long k) {
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

// Neumaier variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

void check_k(const BinomialSpec& spec, long k) {
  if (k < 0 || k > spec.trials) {
    throw std::domain_error("k out of range [0, N], got k=" + std::to_string(k) +
                            " with N=" + std::to_string(spec.trials));
  }
}

// Standard normal CDF.
double phi(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// Acklam's rational approximation to the standard normal quantile.
double quantile_acklam(double q) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  if (q < p_low) {
    double r = std::sqrt(-2.0 * std::log(q));
    return (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
           ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  if (q > 1.0 - p_low) {
    double r = std::sqrt(-2.0 * std::log(1.0 - q));
    return -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
           ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  double r = q - 0.5;
  double s = r * r;
  return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
         (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}

}  // namespace

BinomialSpec::BinomialSpec(long n, double p) : trials(n), success_prob(p) {
  if (n < 1) throw std::domain_error("trials must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("success_prob must lie in [0,1]");
}

double log_binom_pmf(const BinomialSpec& spec, long k) {
  check_k(spec, k);
  const long n = spec.trials;
  const double p = spec.success_prob;
  if (p == 0.0) return k == 0 ? 0.0 : -kInf;
  if (p == 1.0) return k == n ? 0.0 : -kInf;
  return log_choose(n, k) + double(k) * std::log(p) +
         double(n - k) * std::log1p(-p);
}

double binom_cdf(const BinomialSpec& spec, long k) {
  check_k(spec, k);
  const long n = spec.trials;
  const double p = spec.success_prob;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  if (k == n) return 1.0;

  // Anchor at the highest included term (the mode, if the sum reaches
  // it) and walk outward with the log-space pmf recurrence.
  const long mode = std::min<long>(k, long(std::floor(double(n + 1) * p)));
  const double log_anchor = log_binom_pmf(spec, mode);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);

  CompensatedSum acc;
  double lw = log_anchor;
  for (long j = mode; j >= 0; --j) {
    acc.add(std::exp(lw));
    if (j > 0) lw += std::log(double(j)) + log_q - std::log(double(n - j + 1)) - log_p;
  }
  lw = log_anchor;
  for (long j = mode + 1; j <= k; ++j) {
    lw += std::log(double(n - j + 1)) + log_p - std::log(double(j)) - log_q;
    acc.add(std::exp(lw));
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

double binom_upper_tail(const BinomialSpec& spec, long k) {
  check_k(spec, k);
  if (k == 0) return 1.0;
  // Pr{K >= k | N, p} = Pr{K' <= N-k | N, 1-p}.
  BinomialSpec mirror(spec.trials, 1.0 - spec.success_prob);
  return binom_cdf(mirror, spec.trials - k);
}

double normal_quantile(double delta_half) {
  if (!(delta_half > 0.0 && delta_half < 0.5)) {
    throw std::domain_error("normal_quantile requires delta_half in (0, 0.5)");
  }
  const double q = 1.0 - delta_half;
  double x = quantile_acklam(q);
  // One Halley step on Phi(x) = q.
  double err = phi(x) - q;
  double u = err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

NormalCritical normal_critical(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0,1)");
  }
  return NormalCritical{delta, normal_quantile(delta / 2.0)};
}

std::vector<double> log_choose_table(long trials) {
  if (trials < 1) throw std::domain_error("trials must be >= 1");
  std::vector<double> table(size_t(trials) + 1);
  for (long k = 0; k <= trials; ++k) table[size_t(k)] = log_choose(trials, k);
  return table;
}

}  // namespace binomci
