// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include "binomci/coverage.hpp"

#include <algorithm>
#include <cmath>

namespace binomci {

namespace {

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

// splitmix64; counter-based, 64-bit state.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

void check_p_interior(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("p must lie in (0,1)");
}

}  // namespace

Convention convention_for(Method m) {
  switch (m) {
    case Method::MassartRigorous:
    case Method::MassartTuned:
      return Convention::StrictInterior;
    default:
      return Convention::ClosedInterval;
  }
}

const char* convention_name(Convention c) {
  return c == Convention::StrictInterior ? "strict" : "closed";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::ClopperPearson: return "cp";
    case Method::MassartRigorous: return "rigorous";
    case Method::MassartTuned: return "tuned";
    case Method::Wald: return "wald";
    case Method::Wilson: return "wilson";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "cp") return Method::ClopperPearson;
  if (name == "rigorous") return Method::MassartRigorous;
  if (name == "tuned") return Method::MassartTuned;
  if (name == "wald") return Method::Wald;
  if (name == "wilson") return Method::Wilson;
  throw ConfigError("unknown method: " + name);
}

IntervalSet::IntervalSet(Method m, long trials, double delta,
                         const std::function<Interval(long)>& make,
                         Convention convention)
    : method_(m),
      trials_(trials),
      delta_(delta),
      convention_(convention),
      log_choose_(log_choose_table(trials)) {
  intervals_.reserve(size_t(trials) + 1);
  for (long k = 0; k <= trials; ++k) intervals_.push_back(make(k));
}

IntervalSet IntervalSet::make(Method m, long trials, double delta, double tol,
                              const TunedThetaTable& table) {
  std::function<Interval(long)> builder;
  switch (m) {
    case Method::ClopperPearson:
      builder = [=](long k) { return cp_interval(ConfidenceQuery(trials, k, delta), tol); };
      break;
    case Method::MassartRigorous: {
      MassartConfig cfg = rigorous_theta(delta);
      builder = [=](long k) { return massart_limits(ConfidenceQuery(trials, k, delta), cfg); };
      break;
    }
    case Method::MassartTuned:
      builder = [=](long k) { return tuned_interval(ConfidenceQuery(trials, k, delta), table); };
      break;
    case Method::Wald:
      builder = [=](long k) { return wald_interval(ConfidenceQuery(trials, k, delta)); };
      break;
    case Method::Wilson:
      builder = [=](long k) { return wilson_interval(ConfidenceQuery(trials, k, delta)); };
      break;
  }
  return IntervalSet(m, trials, delta, builder, convention_for(m));
}

IntervalSet IntervalSet::make_massart(long trials, const MassartConfig& config) {
  auto builder = [=](long k) {
    return massart_limits(ConfidenceQuery(trials, k, config.delta), config);
  };
  return IntervalSet(config.method(), trials, config.delta, builder,
                     convention_for(config.method()));
}

double IntervalSet::pmf(long k, double p) const {
  return std::exp(log_choose_[size_t(k)] + double(k) * std::log(p) +
                  double(trials_ - k) * std::log1p(-p));
}

CoverageRecord exact_coverage(const IntervalSet& set, double p) {
  check_p_interior(p);
  CompensatedSum covered;
  CompensatedSum width;
  for (long k = 0; k <= set.trials(); ++k) {
    double mass = set.pmf(k, p);
    width.add(mass * set.at(k).width());
    if (set.contains(k, p)) covered.add(mass);
  }
  double cov = std::clamp(covered.value(), 0.0, 1.0);
  return CoverageRecord{set.method(), set.trials(), p,       set.delta(),
                        cov,          1.0 - cov,    width.value(),
                        set.convention()};
}

CoverageRecord exact_coverage(Method m, long trials, double p, double delta,
                              double tol) {
  return exact_coverage(IntervalSet::make(m, trials, delta, tol), p);
}

CoverageRecord monte_carlo_coverage(const IntervalSet& set, double p,
                                    long samples, std::uint64_t seed) {
  check_p_interior(p);
  if (samples < 1) throw std::domain_error("samples must be >= 1");

  // Cumulative pmf table; draws invert it by binary search.
  const long n = set.trials();
  std::vector<double> cum(size_t(n) + 1);
  CompensatedSum acc;
  for (long k = 0; k <= n; ++k) {
    acc.add(set.pmf(k, p));
    cum[size_t(k)] = acc.value();
  }
  cum[size_t(n)] = 1.0;

  SplitMix64 rng{seed};
  long hit = 0;
  CompensatedSum width;
  for (long i = 0; i < samples; ++i) {
    double u = rng.uniform();
    long k = long(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    if (k > n) k = n;
    if (set.contains(k, p)) ++hit;
    width.add(set.at(k).width());
  }
  double cov = double(hit) / double(samples);
  return CoverageRecord{set.method(), n,         p,
                        set.delta(),  cov,       1.0 - cov,
                        width.value() / double(samples), set.convention()};
}

std::vector<CoverageRecord> sweep(const SweepPlan& plan) {
  if (plan.grid.empty()) throw std::domain_error("sweep grid must be non-empty");
  if (std::adjacent_find(plan.grid.begin(), plan.grid.end(),
                         [](double a, double b) { return a >= b; }) !=
      plan.grid.end()) {
    throw std::domain_error("sweep grid must be strictly increasing");
  }
  if (plan.methods.empty()) throw std::domain_error("sweep needs at least one method");

  std::vector<CoverageRecord> out;
  out.reserve(plan.grid.size() * plan.methods.size());

  if (plan.axis == SweepPlan::Axis::OverP) {
    std::vector<IntervalSet> sets;
    sets.reserve(plan.methods.size());
    for (Method m : plan.methods) {
      sets.push_back(IntervalSet::make(m, plan.trials, plan.delta, plan.tol));
    }
    for (double p : plan.grid) {
      for (const auto& set : sets) out.push_back(exact_coverage(set, p));
    }
  } else {
    for (double nv : plan.grid) {
      long n = long(nv);
      if (n < 1 || double(n) != nv) throw std::domain_error("OverN grid values must be positive integers");
      for (Method m : plan.methods) {
        out.push_back(exact_coverage(IntervalSet::make(m, n, plan.delta, plan.tol), plan.true_p));
      }
    }
  }
  return out;
}

namespace {

// Min coverage of the explicit limits with parameter theta over the
// grids; reports the first violating cell when the floor is broken.
struct FeasibilityCheck {
  bool feasible;
  double min_coverage;
  long worst_trials;
  double worst_p;
};

FeasibilityCheck check_theta(double theta, const std::vector<long>& n_set,
                             double delta, const std::vector<double>& p_grid) {
  const double floor = 1.0 - delta;
  FeasibilityCheck out{true, 1.0, n_set.front(), p_grid.front()};
  for (long n : n_set) {
    IntervalSet set =
        IntervalSet::make_massart(n, tuned_theta(theta, delta));
    for (double p : p_grid) {
      double cov = exact_coverage(set, p).coverage;
      if (cov < out.min_coverage) {
        out.min_coverage = cov;
        out.worst_trials = n;
        out.worst_p = p;
      }
      if (cov < floor) {
        out.feasible = false;
        return out;
      }
    }
  }
  return out;
}

}  // namespace

ThetaTuneResult tune_theta(const std::vector<long>& n_set, double delta,
                           const std::vector<double>& p_grid, double tol) {
  if (n_set.empty() || p_grid.empty()) throw std::domain_error("tuning grids must be non-empty");
  if (!(tol > 0.0)) throw std::domain_error("tol must be > 0");

  const double theta_rig = rigorous_theta(delta).theta;
  FeasibilityCheck base = check_theta(theta_rig, n_set, delta, p_grid);
  if (!base.feasible) {
    throw InfeasibleError(
        "rigorous theta fails the coverage floor on the supplied grids; "
        "check grid and containment convention");
  }

  double lo = theta_rig;
  double hi = theta_rig;
  ThetaTuneResult result{tuned_theta(lo, delta), theta_rig,
                         base.worst_trials, base.worst_p, base.min_coverage};
  for (int i = 0; i < 40; ++i) {
    hi *= 2.0;
    FeasibilityCheck c = check_theta(hi, n_set, delta, p_grid);
    if (!c.feasible) {
      result.binding_trials = c.worst_trials;
      result.binding_p = c.worst_p;
      break;
    }
    lo = hi;
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    FeasibilityCheck c = check_theta(mid, n_set, delta, p_grid);
    if (c.feasible) {
      lo = mid;
      result.min_coverage = c.min_coverage;
    } else {
      hi = mid;
      result.binding_trials = c.worst_trials;
      result.binding_p = c.worst_p;
    }
  }
  result.config = tuned_theta(lo, delta);
  return result;
}

std::vector<double> default_p_grid() {
  std::vector<double> grid;
  grid.reserve(999);
  for (int i = 1; i <= 999; ++i) grid.push_back(double(i) / 1000.0);
  return grid;
}

}  // namespace binomci
