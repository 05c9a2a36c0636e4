// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef BINOMCI_COVERAGE_HPP
#define BINOMCI_COVERAGE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "binomci/approx.hpp"
#include "binomci/exact_cp.hpp"
#include "binomci/interval.hpp"
#include "binomci/massart.hpp"

namespace binomci {

/// Whether coverage counts p strictly inside the interval or on the
/// closed interval.  Each method follows its own statement: strict for
/// the explicit-limit methods, closed for the rest.
enum class Convention { StrictInterior, ClosedInterval };

Convention convention_for(Method m);
const char* convention_name(Convention c);

/// Exact coverage, error probability and mean width of one method at
/// one (N, p, delta).
struct CoverageRecord {
  Method method;
  long trials;
  double true_p;
  double delta;
  double coverage;
  double error_prob;
  double mean_width;
  Convention convention;
};

/// All N+1 intervals of one method for fixed (N, delta), plus the
/// ln C(N,k) table.  Interval endpoints do not depend on p, so one set
/// serves an entire p-sweep.
class IntervalSet {
 public:
  IntervalSet(Method m, long trials, double delta,
              const std::function<Interval(long)>& make, Convention convention);

  /// Build the named method's set.  tol applies to Clopper-Pearson
  /// bisection; the tuned method resolves theta through `table`.
  static IntervalSet make(Method m, long trials, double delta,
                          double tol = kDefaultTol,
                          const TunedThetaTable& table = TunedThetaTable());

  /// Explicit limits with an arbitrary theta (used by the tuner).
  static IntervalSet make_massart(long trials, const MassartConfig& config);

  const Interval& at(long k) const { return intervals_[size_t(k)]; }
  long trials() const { return trials_; }
  Method method() const { return method_; }
  double delta() const { return delta_; }
  Convention convention() const { return convention_; }

  bool contains(long k, double p) const {
    return convention_ == Convention::StrictInterior ? at(k).contains_strict(p)
                                                     : at(k).contains_closed(p);
  }

  /// pmf(k; N, p) for p in (0,1), via the cached log-choose table.
  double pmf(long k, double p) const;

 private:
  Method method_;
  long trials_;
  double delta_;
  Convention convention_;
  std::vector<Interval> intervals_;
  std::vector<double> log_choose_;
};

/// Exact coverage by enumeration over k = 0..N; no sampling.
CoverageRecord exact_coverage(const IntervalSet& set, double p);
CoverageRecord exact_coverage(Method m, long trials, double p, double delta,
                              double tol = kDefaultTol);

/// Empirical coverage from `samples` seeded binomial draws (CDF-table
/// inversion, so results are identical across platforms and thread
/// counts for a fixed seed).
CoverageRecord monte_carlo_coverage(const IntervalSet& set, double p,
                                    long samples, std::uint64_t seed);

struct SweepPlan {
  enum class Axis { OverP, OverN };

  Axis axis;
  long trials;          // fixed N (OverP)
  double true_p;        // fixed p (OverN)
  double delta;
  std::vector<double> grid;  // p values, or N values (integral)
  std::vector<Method> methods;
  double tol = kDefaultTol;
};

/// One CoverageRecord per (grid point x method), grid-major.
std::vector<CoverageRecord> sweep(const SweepPlan& plan);

struct ThetaTuneResult {
  MassartConfig config;    // Tuned provenance, theta = theta*
  double theta_rigorous;
  long binding_trials;     // the cell that pins theta* (first violation
  double binding_p;        //  just above theta*)
  double min_coverage;     // min grid coverage at theta*
};

/// Largest theta whose tuned interval keeps exact coverage >= 1-delta
/// over every (N in n_set, p in p_grid), found by bisection over theta
/// to absolute accuracy tol.  Throws InfeasibleError if the rigorous
/// theta itself fails on the supplied grids.
ThetaTuneResult tune_theta(const std::vector<long>& n_set, double delta,
                           const std::vector<double>& p_grid, double tol);

/// 999 equispaced interior points i/1000, i = 1..999.
std::vector<double> default_p_grid();

}  // namespace binomci

#endif
