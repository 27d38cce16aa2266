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

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace islandevo::stats {

// Two-sided 99% standard normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct SampleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n-1) standard deviation
  double stderr_mean = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Quantiles use linear interpolation between order statistics (type 7).
SampleStats summarize(std::span<const double> values);
double quantile(std::vector<double> values, double q);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v) const { return lower <= v && v <= upper; }
};

// mean +- z * stderr
Interval mean_interval(const SampleStats& s, double z = kZ99);

Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ99);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs >= 2 points with
// distinct x; slope_stderr is 0 for exactly 2 points.
LinearFit least_squares(std::span<const std::pair<double, double>> points);

// Mann-Whitney U normal approximation with tie correction; returns the
// two-sided p-value for "a and b come from one distribution".
double mann_whitney_p(std::span<const double> a, std::span<const double> b);

}  // namespace islandevo::stats
