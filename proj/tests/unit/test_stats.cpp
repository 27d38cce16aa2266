/* Copyright 2026 The islandevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "doctest.h"

#include <cmath>
#include <vector>

#include "islandevo/rng.hpp"
#include "islandevo/stats.hpp"

using namespace islandevo::stats;

TEST_CASE("summary of a small sample") {
  const std::vector<double> v = {4, 1, 3, 2, 5};
  const SampleStats s = summarize(v);
  CHECK(s.count == 5);
  CHECK(s.mean == doctest::Approx(3.0));
  CHECK(s.stddev == doctest::Approx(std::sqrt(2.5)));
  CHECK(s.stderr_mean == doctest::Approx(std::sqrt(2.5 / 5)));
  CHECK(s.median == 3.0);
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  CHECK(s.q10 == doctest::Approx(1.4));
  CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  const SampleStats one = summarize(std::vector<double>{7.0});
  CHECK(one.stderr_mean == 0.0);
}

TEST_CASE("wilson interval") {
  const Interval w = wilson_interval(50, 100);
  CHECK(w.contains(0.5));
  CHECK(w.lower == doctest::Approx(0.37528).epsilon(1e-4));
  CHECK(w.upper == doctest::Approx(0.62472).epsilon(1e-4));
  const Interval zero = wilson_interval(0, 1000);
  CHECK(zero.lower == doctest::Approx(0.0));
  CHECK(zero.upper > 0.0);
  CHECK_FALSE(wilson_interval(600, 1000).contains(0.5));
}

TEST_CASE("least squares recovers a line") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 6; ++i) pts.emplace_back(i, 2.0 - 0.5 * i);
  const LinearFit f = least_squares(pts);
  CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.slope_stderr == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(f.points == 6);

  pts = {{0, 0}, {1, 1}, {2, 1}, {3, 3}};
  const LinearFit g = least_squares(pts);
  // By hand: Sxy = 4.5, Sxx = 5, residuals 0.1, 0.2, -0.7, 0.4.
  CHECK(g.slope == doctest::Approx(0.9));
  CHECK(g.intercept == doctest::Approx(-0.1));
  CHECK(g.slope_stderr == doctest::Approx(std::sqrt(0.7 / 2 / 5)));
}

TEST_CASE("mann-whitney separates shifted samples only") {
  islandevo::RngStream rng(1);
  std::vector<double> a, b, c;
  for (int i = 0; i < 300; ++i) {
    a.push_back(rng.uniform01());
    b.push_back(rng.uniform01());
    c.push_back(rng.uniform01() + 0.3);
  }
  CHECK(mann_whitney_p(a, b) > 0.01);
  CHECK(mann_whitney_p(a, c) < 1e-10);
  const std::vector<double> tied(50, 1.0);
  CHECK(mann_whitney_p(tied, tied) == doctest::Approx(1.0));
}
