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
#include <span>
#include <vector>

#include "islandevo/fitness.hpp"

namespace islandevo::analytic {

using State = std::uint32_t;

/// Transition law of the (1+1) EA over all 2^n points: an offspring at
/// Hamming distance d has probability p^d (1-p)^(n-d), p = 1/n_mut, and is
/// accepted iff it is not worse. Rejected mass stays on the diagonal.
/// State s encodes x_i as bit i of s. Rows are generated on demand.
class ExactChain {
 public:
  static constexpr std::size_t kMaxBits = 12;

  ExactChain(const FitnessSpec& spec, std::uint64_t n_mut);

  std::size_t bits() const { return n_; }
  std::size_t states() const { return std::size_t{1} << n_; }
  std::uint64_t n_mut() const { return n_mut_; }
  const FitnessSpec& spec() const { return spec_; }

  FitnessValue fitness(State s) const { return fitness_[s]; }
  double probability(State from, State to) const;
  // Dense row P(from -> .), length states().
  void row(State from, std::span<double> out) const;

  State encode(const BitString& x) const;

 private:
  FitnessSpec spec_;
  std::size_t n_;
  std::uint64_t n_mut_;
  std::vector<FitnessValue> fitness_;
  std::vector<double> by_distance_;  // P(mutation lands at distance d)
  std::vector<double> stay_;
};

// Refuses n > 12 with AnalysisError.
ExactChain build_chain(const FitnessSpec& spec, std::uint64_t n_mut);

// Bytes of the dense system for m unknowns.
std::size_t dense_memory_bytes(std::size_t unknowns);

// Expected number of steps until a target state is first occupied, averaged
// over `start` (empty = uniform over all states). Start mass on targets
// contributes 0. Throws AnalysisError if some state reachable from the
// start cannot reach a target.
double expected_hitting_time(const ExactChain& chain, std::span<const State> targets,
                             std::span<const double> start = {});

// Probability that `a` is occupied before `b`. Start mass on a counts 1,
// on b counts 0. Throws AnalysisError if some start state can reach neither.
double hitting_probability(const ExactChain& chain, State a, State b,
                           std::span<const double> start = {});

// ((n/(n-1))^(n-1) + 1/n - 1) / 2 * n^2, n >= 2.
double exact_lo_runtime(std::size_t n);

// inner_expected * ((n/(n-1))^n - 1) / ((n/(n-1))^k - 1); inner_expected is
// the inner function's hitting time on k bits at flip rate 1/n.
double lo_block_runtime(std::size_t n, std::size_t k, double inner_expected);

struct GeometricBounds {
  double lower = 0.0;
  double exact = 0.0;
  double upper = 0.0;
};

// Waiting time for the first success among m agents that each succeed per
// step with probability 1/expected_single.
GeometricBounds geometric_min_bounds(double expected_single, std::size_t m);

// 2^-n * sum_{k=1..n} C(n,k) * n / k, evaluated with log-binomials.
double choose_sum_div(std::size_t n);

struct BlackBoxRun {
  std::uint64_t ea_evaluations = 0;  // includes the initial evaluation
  std::uint64_t enumeration_evaluations = 0;
  std::uint64_t total() const { return ea_evaluations + enumeration_evaluations; }
  bool found_by_ea = false;
};

// Two-phase black-box search on Fork(n, r): a (1+1) EA (rate 1/n) until the
// incumbent is 1^n, the valley or the optimum, then, unless the optimum is
// already known, every point at Hamming distance r from 1^n in
// lexicographic flip-set order until the optimum is evaluated.
BlackBoxRun black_box_fork(std::size_t n, std::size_t r, std::uint64_t seed);

}  // namespace islandevo::analytic
