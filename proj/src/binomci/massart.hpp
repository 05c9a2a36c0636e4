// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef BINOMCI_MASSART_HPP
#define BINOMCI_MASSART_HPP

#include "binomci/binom_core.hpp"
#include "binomci/interval.hpp"

namespace binomci {

/// The theta parameter of the explicit confidence limits, together
/// with where it came from: the rigorous value tied to delta, or an
/// empirically tuned value.
struct MassartConfig {
  enum class Provenance { Rigorous, Tuned };

  double theta;
  Provenance provenance;
  double delta;  // the delta theta was derived/tuned for

  Method method() const {
    return provenance == Provenance::Rigorous ? Method::MassartRigorous
                                              : Method::MassartTuned;
  }
};

/// theta = 9 / (8 ln(2/delta)); the value that makes the explicit
/// limits a guaranteed-coverage interval.
MassartConfig rigorous_theta(double delta);

MassartConfig tuned_theta(double theta, double delta);

/// The explicit confidence limits
///   k/N + (3/4) (1 - 2k/N -+ sqrt(1 + 4 theta k (1 - k/N))) / (1 + theta N).
/// Raw values are kept; lower/upper are clamped to [0,1].
Interval massart_limits(const ConfidenceQuery& query, const MassartConfig& config);

/// (N, p, epsilon) for evaluating the concentration bounds.
struct TailQuery {
  BinomialSpec spec;
  double epsilon;

  TailQuery(BinomialSpec s, double eps) : spec(s), epsilon(eps) {
    if (!(eps > 0.0)) throw std::domain_error("epsilon must be > 0");
  }
};

/// Upper bound on Pr{K/N >= p + eps}:
///   exp(-N eps^2 / (2 (p + eps/3)(1 - p - eps/3))).
/// Returns 1 when the bound is vacuous (1 - p - eps/3 <= 0).
double massart_upper_tail(const TailQuery& query);

/// Upper bound on Pr{K/N <= p - eps}; the reflection of the upper-tail
/// bound through Y = 1 - X.  Returns 1 when p - eps/3 <= 0.
double massart_lower_tail(const TailQuery& query);

/// Upper bound on Pr{K <= k} at parameter x, valid for x in (k/N, 1):
///   exp(-N (x - k/N)^2 / (2 (2x/3 + k/(3N))(1 - 2x/3 - k/(3N)))).
double cdf_upper_bound(long trials, long k, double x);

/// Lower bound on Pr{K < k} at parameter x, valid for x in (0, k/N),
/// k >= 1: one minus the same exponential.
double cdf_lower_bound(long trials, long k, double x);

}  // namespace binomci

#endif
