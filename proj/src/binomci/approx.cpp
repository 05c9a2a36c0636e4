// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "binomci/approx.hpp"

#include <cmath>

#include "binomci/binom_core.hpp"

namespace binomci {

TunedThetaTable::TunedThetaTable() {
  entries_ = {{0.05, 1.0 / 2.0}, {0.01, 1.0 / 3.0}, {0.001, 1.0 / 5.0}};
}

void TunedThetaTable::set(double delta, double theta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0,1)");
  if (!(theta > 0.0)) throw std::domain_error("theta must be > 0");
  for (auto& e : entries_) {
    if (e.first == delta) {
      e.second = theta;
      return;
    }
  }
  entries_.emplace_back(delta, theta);
}

std::optional<double> TunedThetaTable::find(double delta) const {
  for (const auto& e : entries_) {
    if (std::abs(e.first - delta) <= 1e-12) return e.second;
  }
  return std::nullopt;
}

Interval wald_interval(const ConfidenceQuery& query) {
  const double n = double(query.trials);
  const double ratio = double(query.successes) / n;
  const double z = normal_quantile(query.delta / 2.0);
  const double half = z * std::sqrt(ratio * (1.0 - ratio) / n);
  return Interval::from_raw(ratio - half, ratio + half, Method::Wald);
}

Interval wilson_interval(const ConfidenceQuery& query) {
  const double n = double(query.trials);
  const double ratio = double(query.successes) / n;
  const double z = normal_quantile(query.delta / 2.0);
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (ratio + 0.5 * z2n) / denom;
  const double half =
      z * std::sqrt(ratio * (1.0 - ratio) / n + 0.25 * z2n / n) / denom;
  return Interval::from_raw(center - half, center + half, Method::Wilson);
}

Interval tuned_interval(const ConfidenceQuery& query, const TunedThetaTable& table) {
  auto theta = table.find(query.delta);
  if (!theta) {
    throw ConfigError("no tuned theta for delta=" + std::to_string(query.delta));
  }
  return massart_limits(query, tuned_theta(*theta, query.delta));
}

}  // namespace binomci
