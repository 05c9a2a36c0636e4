// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef BINOMCI_APPROX_HPP
#define BINOMCI_APPROX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "binomci/interval.hpp"
#include "binomci/massart.hpp"

namespace binomci {

/// delta -> theta lookup for the empirically tuned explicit limits.
/// The default table holds exactly the pairs (0.05, 1/2), (0.01, 1/3),
/// (0.001, 1/5); callers may override or extend it.
class TunedThetaTable {
 public:
  TunedThetaTable();

  void set(double delta, double theta);
  std::optional<double> find(double delta) const;

  const std::vector<std::pair<double, double>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<double, double>> entries_;
};

/// Wald interval: k/N -+ Z_{delta/2} sqrt(k/N (1-k/N) / N), clamped.
/// Zero width at k = 0 and k = N.
Interval wald_interval(const ConfidenceQuery& query);

/// The normal-approximation limits before the z^2/N terms are dropped:
///   [k/N + z^2/(2N) -+ z sqrt(k/N (1-k/N)/N + z^2/(4N^2))] / (1 + z^2/N).
Interval wilson_interval(const ConfidenceQuery& query);

/// Explicit limits with the tuned theta for query.delta.  Throws
/// ConfigError when delta has no table entry.
Interval tuned_interval(const ConfidenceQuery& query,
                        const TunedThetaTable& table = TunedThetaTable());

}  // namespace binomci

#endif
