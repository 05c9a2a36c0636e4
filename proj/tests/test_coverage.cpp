// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include <doctest.h>

#include <cmath>

#include "binomci/coverage.hpp"
#include "rational_oracle.hpp"

using namespace binomci;
using binomci::testing::Rational;

namespace {

IntervalSet constant_unit_set(long n, double delta) {
  auto full = [](long) {
    return Interval{0.0, 1.0, 0.0, 1.0, Method::ClopperPearson};
  };
  return IntervalSet(Method::ClopperPearson, n, delta, full,
                     Convention::ClosedInterval);
}

}  // namespace

TEST_CASE("conventions follow each method's statement") {
  CHECK(convention_for(Method::MassartRigorous) == Convention::StrictInterior);
  CHECK(convention_for(Method::MassartTuned) == Convention::StrictInterior);
  CHECK(convention_for(Method::ClopperPearson) == Convention::ClosedInterval);
  CHECK(convention_for(Method::Wald) == Convention::ClosedInterval);
  CHECK(convention_for(Method::Wilson) == Convention::ClosedInterval);
}

TEST_CASE("constant unit interval has coverage one") {
  IntervalSet set = constant_unit_set(25, 0.05);
  for (double p : {0.001, 0.4, 0.999}) {
    CoverageRecord rec = exact_coverage(set, p);
    CHECK(rec.coverage == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.error_prob == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(rec.mean_width == doctest::Approx(1.0).epsilon(1e-12));
  }
  CoverageRecord mc = monte_carlo_coverage(set, 0.3, 1000, 42);
  CHECK(mc.coverage == 1.0);
}

TEST_CASE("coverage and error probability are complementary") {
  for (Method m : {Method::ClopperPearson, Method::MassartRigorous, Method::Wald}) {
    IntervalSet set = IntervalSet::make(m, 40, 0.05);
    for (double p : {0.01, 0.3, 0.77}) {
      CoverageRecord rec = exact_coverage(set, p);
      CHECK(rec.coverage + rec.error_prob == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rec.convention == convention_for(m));
    }
  }
}

TEST_CASE("mean width matches direct recomputation") {
  IntervalSet set = IntervalSet::make(Method::MassartRigorous, 30, 0.05);
  double p = 0.37;
  double expected = 0.0;
  for (long k = 0; k <= 30; ++k) expected += set.pmf(k, p) * set.at(k).width();
  CHECK(exact_coverage(set, p).mean_width ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("guaranteed methods clear the coverage floor") {
  for (double delta : {0.05, 0.01}) {
    for (long n : {10L, 60L, 250L}) {
      IntervalSet cp = IntervalSet::make(Method::ClopperPearson, n, delta);
      IntervalSet rig = IntervalSet::make(Method::MassartRigorous, n, delta);
      for (int i = 1; i < 40; ++i) {
        double p = double(i) / 40.0;
        CHECK(exact_coverage(cp, p).coverage >= 1.0 - delta - 1e-12);
        CHECK(exact_coverage(rig, p).coverage >= 1.0 - delta - 1e-12);
      }
    }
  }
}

TEST_CASE("rigorous coverage at N=100, p=0.5 matches the rational oracle") {
  IntervalSet set = IntervalSet::make(Method::MassartRigorous, 100, 0.05);
  std::vector<Interval> intervals;
  for (long k = 0; k <= 100; ++k) intervals.push_back(set.at(k));
  Rational oracle =
      binomci::testing::rat_coverage(intervals, 100, Rational(1, 2), true);
  double cov = exact_coverage(set, 0.5).coverage;
  CHECK(cov == doctest::Approx(binomci::testing::to_double(oracle)).epsilon(1e-12));
  CHECK(cov > 0.95);
}

TEST_CASE("production evaluator agrees with the rational oracle at small N") {
  for (long n : {10L, 17L, 30L}) {
    for (Method m : {Method::ClopperPearson, Method::MassartRigorous,
                     Method::MassartTuned, Method::Wald, Method::Wilson}) {
      IntervalSet set = IntervalSet::make(m, n, 0.05);
      std::vector<Interval> intervals;
      for (long k = 0; k <= n; ++k) intervals.push_back(set.at(k));
      bool strict = set.convention() == Convention::StrictInterior;
      for (int i = 1; i < 64; i += 4) {
        Rational p(i, 64);
        Rational oracle = binomci::testing::rat_coverage(intervals, n, p, strict);
        double cov = exact_coverage(set, double(i) / 64.0).coverage;
        CHECK(std::abs(cov - binomci::testing::to_double(oracle)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("Monte Carlo tracks the exact evaluator") {
  IntervalSet set = IntervalSet::make(Method::ClopperPearson, 50, 0.05);
  double exact = exact_coverage(set, 0.3).coverage;
  CoverageRecord mc = monte_carlo_coverage(set, 0.3, 100000, 20240521);
  double se = std::sqrt(exact * (1.0 - exact) / 100000.0);
  CHECK(std::abs(mc.coverage - exact) <= 3.0 * se);
}

TEST_CASE("Monte Carlo is deterministic in the seed") {
  IntervalSet set = IntervalSet::make(Method::Wald, 30, 0.05);
  CoverageRecord a = monte_carlo_coverage(set, 0.4, 5000, 7);
  CoverageRecord b = monte_carlo_coverage(set, 0.4, 5000, 7);
  CHECK(a.coverage == b.coverage);
  CHECK(a.mean_width == b.mean_width);

  CoverageRecord single = monte_carlo_coverage(set, 0.4, 1, 99);
  CHECK((single.coverage == 0.0 || single.coverage == 1.0));
}

TEST_CASE("sweep emits grid-major records") {
  SweepPlan plan;
  plan.axis = SweepPlan::Axis::OverP;
  plan.trials = 20;
  plan.delta = 0.05;
  plan.grid = {0.2, 0.5, 0.8};
  plan.methods = {Method::Wald, Method::MassartRigorous};
  auto records = sweep(plan);
  REQUIRE(records.size() == 6);
  CHECK(records[0].true_p == 0.2);
  CHECK(records[0].method == Method::Wald);
  CHECK(records[1].method == Method::MassartRigorous);
  CHECK(records[4].true_p == 0.8);
}

TEST_CASE("sweep over N with a single-point grid") {
  SweepPlan plan;
  plan.axis = SweepPlan::Axis::OverN;
  plan.true_p = 0.5;
  plan.delta = 0.05;
  plan.grid = {40.0};
  plan.methods = {Method::MassartRigorous};
  auto records = sweep(plan);
  REQUIRE(records.size() == 1);
  CHECK(records[0].trials == 40);
  CHECK(records[0].error_prob < 0.05);
}

TEST_CASE("sweep validates its plan") {
  SweepPlan plan;
  plan.axis = SweepPlan::Axis::OverP;
  plan.trials = 10;
  plan.delta = 0.05;
  plan.methods = {Method::Wald};
  plan.grid = {};
  CHECK_THROWS_AS(sweep(plan), std::domain_error);
  plan.grid = {0.5, 0.5};
  CHECK_THROWS_AS(sweep(plan), std::domain_error);
  plan.grid = {0.5, 0.2};
  CHECK_THROWS_AS(sweep(plan), std::domain_error);
}

TEST_CASE("theta tuning starts feasible and improves on the rigorous value") {
  std::vector<long> n_set = {10, 50};
  std::vector<double> p_grid;
  for (int i = 1; i < 20; ++i) p_grid.push_back(double(i) / 20.0);
  ThetaTuneResult r = tune_theta(n_set, 0.05, p_grid, 1e-4);
  CHECK(r.config.provenance == MassartConfig::Provenance::Tuned);
  CHECK(r.config.theta >= r.theta_rigorous);
  CHECK(r.min_coverage >= 0.95 - 1e-12);

  // enlarging the grids can only shrink theta*
  std::vector<long> bigger = {10, 50, 100};
  ThetaTuneResult r2 = tune_theta(bigger, 0.05, p_grid, 1e-4);
  CHECK(r2.config.theta <= r.config.theta + 1e-4);
}

TEST_CASE("tune_theta validates inputs") {
  CHECK_THROWS_AS(tune_theta({}, 0.05, {0.5}, 1e-3), std::domain_error);
  CHECK_THROWS_AS(tune_theta({10}, 0.05, {}, 1e-3), std::domain_error);
  CHECK_THROWS_AS(tune_theta({10}, 0.05, {0.5}, 0.0), std::domain_error);
}

TEST_CASE("coverage requires p in the open unit interval") {
  IntervalSet set = IntervalSet::make(Method::Wald, 10, 0.05);
  CHECK_THROWS_AS(exact_coverage(set, 0.0), std::domain_error);
  CHECK_THROWS_AS(exact_coverage(set, 1.0), std::domain_error);
  CHECK_THROWS_AS(monte_carlo_coverage(set, 0.5, 0, 1), std::domain_error);
}
