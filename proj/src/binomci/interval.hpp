// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef BINOMCI_INTERVAL_HPP
#define BINOMCI_INTERVAL_HPP

#include <algorithm>
#include <stdexcept>
#include <string>

namespace binomci {

enum class Method {
  ClopperPearson,
  MassartRigorous,
  MassartTuned,
  Wald,
  Wilson,
};

const char* method_name(Method m);
Method parse_method(const std::string& name);

/// One interval request: N trials, k observed successes, confidence
/// parameter delta.
struct ConfidenceQuery {
  long trials;
  long successes;
  double delta;

  ConfidenceQuery(long n, long k, double d) : trials(n), successes(k), delta(d) {
    if (n < 1) throw std::domain_error("trials must be >= 1");
    if (k < 0 || k > n) throw std::domain_error("successes must lie in [0, N]");
    if (!(d > 0.0 && d < 1.0)) throw std::domain_error("delta must lie in (0,1)");
  }
};

/// Confidence limits. `lower`/`upper` are clamped to [0,1]; the raw
/// formula values are kept alongside because the explicit limits can
/// fall outside the unit interval.
struct Interval {
  double lower;
  double upper;
  double raw_lower;
  double raw_upper;
  Method method;

  static Interval from_raw(double raw_lo, double raw_hi, Method m) {
    return Interval{std::max(raw_lo, 0.0), std::min(raw_hi, 1.0), raw_lo, raw_hi, m};
  }

  double width() const { return upper - lower; }

  bool contains_closed(double p) const { return lower <= p && p <= upper; }
  bool contains_strict(double p) const { return lower < p && p < upper; }
};

}  // namespace binomci

#endif
