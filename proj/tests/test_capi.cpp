// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "binomci.h"

TEST_CASE("status and method string tables") {
  CHECK(std::string(bci_strerror(BCI_OK)) == "ok");
  CHECK(std::string(bci_method_name(BCI_METHOD_CP)) == "cp");
  bci_method m;
  CHECK(bci_method_parse("rigorous", &m) == BCI_OK);
  CHECK(m == BCI_METHOD_RIGOROUS);
  CHECK(bci_method_parse("nope", &m) == BCI_ERR_CONFIG);
  CHECK(bci_method_parse(nullptr, &m) == BCI_ERR_DOMAIN);
}

TEST_CASE("primitives round through the C surface") {
  double v = 0.0;
  CHECK(bci_log_binom_pmf(10, 0.5, 2, &v) == BCI_OK);
  CHECK(v == doctest::Approx(-3.1248093158291333).epsilon(1e-12));
  CHECK(bci_log_binom_pmf(10, 0.5, 11, &v) == BCI_ERR_DOMAIN);
  CHECK(bci_log_binom_pmf(10, 0.5, 2, nullptr) == BCI_ERR_DOMAIN);

  CHECK(bci_binom_cdf(10, 0.5, 2, &v) == BCI_OK);
  CHECK(v == doctest::Approx(0.0546875).epsilon(1e-14));
  CHECK(bci_binom_upper_tail(10, 0.5, 3, &v) == BCI_OK);
  CHECK(v == doctest::Approx(1.0 - 0.0546875).epsilon(1e-12));

  CHECK(bci_normal_quantile(0.025, &v) == BCI_OK);
  CHECK(std::abs(v - 1.9599639845400545) < 1e-9);
  CHECK(bci_normal_quantile(0.6, &v) == BCI_ERR_DOMAIN);

  CHECK(bci_rigorous_theta(0.05, &v) == BCI_OK);
  CHECK(v == doctest::Approx(0.30497065951704389).epsilon(1e-14));
  CHECK(bci_rigorous_theta(1.5, &v) == BCI_ERR_DOMAIN);
}

TEST_CASE("interval computation per method") {
  bci_interval iv;
  CHECK(bci_interval_compute(BCI_METHOD_CP, 10, 5, 0.05, 1e-10, &iv) == BCI_OK);
  CHECK(std::abs(iv.lower - 0.18708602844739853) < 1e-9);
  CHECK(std::abs(iv.upper - 0.81291397155260147) < 1e-9);

  CHECK(bci_interval_compute(BCI_METHOD_RIGOROUS, 10, 5, 0.05, 0, &iv) == BCI_OK);
  CHECK(std::abs(iv.lower - 0.12730850356910490) < 1e-9);

  CHECK(bci_interval_compute(BCI_METHOD_TUNED, 10, 5, 0.05, 0, &iv) == BCI_OK);
  CHECK(std::abs(iv.lower - 0.19381378215210274) < 1e-12);
  CHECK(bci_interval_compute(BCI_METHOD_TUNED, 10, 5, 0.02, 0, &iv) ==
        BCI_ERR_CONFIG);

  CHECK(bci_interval_compute(BCI_METHOD_CP, 10, 11, 0.05, 1e-10, &iv) ==
        BCI_ERR_DOMAIN);

  CHECK(bci_massart_interval(10, 5, 0.5, &iv) == BCI_OK);
  CHECK(std::abs(iv.lower - 0.19381378215210274) < 1e-12);
}

TEST_CASE("concentration bounds through the C surface") {
  double v = 0.0;
  CHECK(bci_massart_upper_tail(100, 0.5, 0.1, &v) == BCI_OK);
  CHECK(v == doctest::Approx(0.13413231089733183).epsilon(1e-12));
  CHECK(bci_massart_lower_tail(100, 0.5, 0.1, &v) == BCI_OK);
  CHECK(v == doctest::Approx(0.13413231089733183).epsilon(1e-12));
  CHECK(bci_massart_upper_tail(100, 0.5, -0.1, &v) == BCI_ERR_DOMAIN);
  CHECK(bci_cdf_upper_bound(100, 40, 0.6, &v) == BCI_OK);
  CHECK(v > 0.0);
  CHECK(bci_cdf_upper_bound(100, 40, 0.2, &v) == BCI_ERR_DOMAIN);
  CHECK(bci_cdf_lower_bound(100, 40, 0.2, &v) == BCI_OK);
  CHECK(bci_cdf_lower_bound(100, 0, 0.2, &v) == BCI_ERR_DOMAIN);
}

TEST_CASE("interval set lifecycle and coverage") {
  bci_interval_set* set = nullptr;
  REQUIRE(bci_interval_set_create(BCI_METHOD_RIGOROUS, 100, 0.05, 1e-10, &set) ==
          BCI_OK);
  REQUIRE(set != nullptr);

  bci_interval iv;
  CHECK(bci_interval_set_get(set, 50, &iv) == BCI_OK);
  CHECK(iv.lower > 0.3);
  CHECK(bci_interval_set_get(set, 101, &iv) == BCI_ERR_DOMAIN);

  bci_coverage_record rec;
  CHECK(bci_interval_set_coverage(set, 0.5, &rec) == BCI_OK);
  CHECK(rec.coverage > 0.95);
  CHECK(rec.convention == BCI_CONVENTION_STRICT);
  CHECK(rec.coverage + rec.error_prob == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bci_interval_set_coverage(set, 0.0, &rec) == BCI_ERR_DOMAIN);

  bci_coverage_record mc1, mc2;
  CHECK(bci_interval_set_mc_coverage(set, 0.5, 20000, 11, &mc1) == BCI_OK);
  CHECK(bci_interval_set_mc_coverage(set, 0.5, 20000, 11, &mc2) == BCI_OK);
  CHECK(mc1.coverage == mc2.coverage);

  bci_interval_set_destroy(set);
  bci_interval_set_destroy(nullptr);  // must be a no-op
}

TEST_CASE("interval set with a custom theta") {
  bci_interval_set* set = nullptr;
  REQUIRE(bci_interval_set_create_theta(10, 0.05, 0.5, &set) == BCI_OK);
  bci_interval iv;
  CHECK(bci_interval_set_get(set, 5, &iv) == BCI_OK);
  CHECK(std::abs(iv.lower - 0.19381378215210274) < 1e-12);
  bci_interval_set_destroy(set);

  CHECK(bci_interval_set_create_theta(10, 0.05, -1.0, &set) == BCI_ERR_DOMAIN);
  CHECK(set == nullptr);
}

TEST_CASE("theta tuning through the C surface") {
  long n_set[] = {10, 50};
  double p_grid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  double theta = 0.0, bp = 0.0, min_cov = 0.0;
  long bn = 0;
  CHECK(bci_tune_theta(n_set, 2, 0.05, p_grid, 5, 1e-3, &theta, &bn, &bp,
                       &min_cov) == BCI_OK);
  CHECK(theta >= 0.30497);
  CHECK(min_cov >= 0.95 - 1e-12);
  CHECK(bci_tune_theta(nullptr, 2, 0.05, p_grid, 5, 1e-3, &theta, &bn, &bp,
                       &min_cov) == BCI_ERR_DOMAIN);
}
