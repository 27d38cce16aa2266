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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace islandevo::verify {

// Tolerances, sample sizes and seeds of the acceptance checks. Every field is
// addressable by name through set() so a run can tighten or corrupt a bound.
struct Thresholds {
  // 1: LeadingOnes chain vs closed form
  double c1_rel_tol = 1e-9;
  double c1_max_n = 10;
  double c1_max_seconds = 30;
  // 2: block composition on 12 bits
  double c2_rel_tol = 1e-6;
  double c2_max_seconds = 600;
  // 3: valley-before-optimum probability
  double c3_abs_tol = 1e-9;
  double c3_target = 0.5;
  double c3_replicates = 100000;
  // 4: Monte Carlo vs chain
  double c4_replicates = 100000;
  double c4_stderr_multiple = 3;
  // 5: single EA exponent on Fork(n, 2)
  double c5_replicates = 1000;
  double c5_target = 4.0;
  double c5_half_width = 0.6;
  // 6: black-box exponent
  double c6_replicates = 2000;
  double c6_target = 2.0;
  double c6_half_width = 0.4;
  // 7: topology ordering
  double c7_replicates = 300;
  // 9: choose_sum_div ranges
  double c9_lower = 0.4;
  double c9_upper = 2.5;
  double c9_tail_lower = 1.9;
  double c9_tail_upper = 2.1;
  // 10: thread counts compared
  double c10_threads = 4;

  double seed = 20260101;

  void set(const std::string& key, double value);
  std::vector<std::string> keys() const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  std::string bound;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const Thresholds& t, std::size_t threads);

// Runs the selected criteria (all when `only` is empty). A criterion that
// throws is recorded as failed; the remaining ones still run.
std::vector<CriterionResult> verify_all(const Thresholds& t, std::size_t threads,
                                        const std::vector<int>& only = {});

nlohmann::json report_json(const std::vector<CriterionResult>& results);
std::string summary_line(const CriterionResult& r);

}  // namespace islandevo::verify
