// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef BINOMCI_BINOM_CORE_HPP
#define BINOMCI_BINOM_CORE_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace binomci {

// Thrown when a tuned-theta lookup or similar configuration is invalid.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a tuning/optimization problem has no feasible point.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A binomial distribution with N trials and success probability p.
struct BinomialSpec {
  long trials;
  double success_prob;

  BinomialSpec(long n, double p);
};

/// Critical value z with Phi(z) = 1 - delta/2.
struct NormalCritical {
  double delta;
  double z_value;
};

/// ln[ C(N,k) p^k (1-p)^(N-k) ], computed through log-gamma.
/// Returns -inf when the probability is exactly zero.  Throws
/// std::domain_error for k outside [0, N].
double log_binom_pmf(const BinomialSpec& spec, long k);

/// Pr{K <= k} for K ~ Binomial(N, p).  Terms are accumulated from the
/// mode outward with compensated summation so that rare-event p (1e-5
/// and below) does not underflow the sum.
double binom_cdf(const BinomialSpec& spec, long k);

/// Pr{K >= k}; the complement tail summed directly (not as 1 - cdf),
/// so tiny tail probabilities keep full relative accuracy.
double binom_upper_tail(const BinomialSpec& spec, long k);

/// z such that Phi(z) = 1 - delta_half, for delta_half in (0, 0.5).
/// Rational initial approximation refined by a Halley step against
/// erfc; absolute error well below 1e-9.
double normal_quantile(double delta_half);

/// Convenience wrapper building the Z_{delta/2} critical value.
NormalCritical normal_critical(double delta);

/// ln C(N,k) for all k in [0, N].  Shared by the coverage evaluators,
/// which revisit the same N with many different p.
std::vector<double> log_choose_table(long trials);

}  // namespace binomci

#endif
