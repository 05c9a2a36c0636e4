// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "binomci/massart.hpp"

#include <cmath>

namespace binomci {

MassartConfig rigorous_theta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0,1)");
  }
  double theta = 9.0 / (8.0 * std::log(2.0 / delta));
  return MassartConfig{theta, MassartConfig::Provenance::Rigorous, delta};
}

MassartConfig tuned_theta(double theta, double delta) {
  if (!(theta > 0.0)) throw std::domain_error("theta must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0,1)");
  }
  return MassartConfig{theta, MassartConfig::Provenance::Tuned, delta};
}

Interval massart_limits(const ConfidenceQuery& query, const MassartConfig& config) {
  const double n = double(query.trials);
  const double ratio = double(query.successes) / n;
  const double radical =
      std::sqrt(1.0 + 4.0 * config.theta * double(query.successes) * (1.0 - ratio));
  const double scale = 0.75 / (1.0 + config.theta * n);
  const double raw_lo = ratio + scale * (1.0 - 2.0 * ratio - radical);
  const double raw_hi = ratio + scale * (1.0 - 2.0 * ratio + radical);
  return Interval::from_raw(raw_lo, raw_hi, config.method());
}

double massart_upper_tail(const TailQuery& query) {
  const double p = query.spec.success_prob;
  const double eps = query.epsilon;
  const double a = p + eps / 3.0;
  const double b = 1.0 - p - eps / 3.0;
  if (b <= 0.0) return 1.0;  // vacuous beyond the support
  double bound =
      std::exp(-double(query.spec.trials) * eps * eps / (2.0 * a * b));
  return std::min(bound, 1.0);
}

double massart_lower_tail(const TailQuery& query) {
  BinomialSpec mirror(query.spec.trials, 1.0 - query.spec.success_prob);
  return massart_upper_tail(TailQuery(mirror, query.epsilon));
}

namespace {

double cdf_bound_exponent(long trials, long k, double x) {
  const double n = double(trials);
  const double ratio = double(k) / n;
  const double dev = x - ratio;
  const double a = (2.0 / 3.0) * x + ratio / 3.0;
  const double b = 1.0 - a;
  return -n * dev * dev / (2.0 * a * b);
}

}  // namespace

double cdf_upper_bound(long trials, long k, double x) {
  if (trials < 1 || k < 0 || k > trials) throw std::domain_error("bad (N, k)");
  if (!(x > double(k) / double(trials) && x < 1.0)) {
    throw std::domain_error("cdf_upper_bound requires x in (k/N, 1)");
  }
  return std::exp(cdf_bound_exponent(trials, k, x));
}

double cdf_lower_bound(long trials, long k, double x) {
  if (trials < 1 || k < 1 || k > trials) {
    throw std::domain_error("cdf_lower_bound requires 1 <= k <= N");
  }
  if (!(x > 0.0 && x < double(k) / double(trials))) {
    throw std::domain_error("cdf_lower_bound requires x in (0, k/N)");
  }
  return 1.0 - std::exp(cdf_bound_exponent(trials, k, x));
}

}  // namespace binomci
