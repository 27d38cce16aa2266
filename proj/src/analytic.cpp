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

#include "islandevo/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <numeric>

#include "islandevo/ea.hpp"
#include "islandevo/error.hpp"
#include "islandevo/rng.hpp"
#include "islandevo/simd/kernels.hpp"

namespace islandevo::analytic {
namespace {

// Above this many unknowns the solver announces its memory footprint.
constexpr std::size_t kAnnounceUnknowns = 1024;

// The EA phase of the black-box search needs O(n log n) steps in expectation.
constexpr std::uint64_t kBlackBoxEaCap = std::uint64_t{1} << 40;

// Forward closure of the start support, not expanding through `stop` states.
std::vector<char> forward_closure(const ExactChain& chain, std::span<const double> start,
                                  const std::vector<char>& stop) {
  const std::size_t count = chain.states();
  std::vector<char> seen(count, 0);
  std::vector<State> queue;
  for (State s = 0; s < count; ++s) {
    if (start[s] > 0.0 && !stop[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  std::vector<double> row(count);
  while (!queue.empty()) {
    const State x = queue.back();
    queue.pop_back();
    chain.row(x, row);
    for (State y = 0; y < count; ++y) {
      if (row[y] > 0.0 && !seen[y] && !stop[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return seen;
}

// States from which some `goal` state has positive probability of being hit.
std::vector<char> backward_closure(const ExactChain& chain, const std::vector<char>& goal) {
  const std::size_t count = chain.states();
  std::vector<char> reach(goal);
  std::vector<State> queue;
  for (State s = 0; s < count; ++s) {
    if (goal[s]) queue.push_back(s);
  }
  while (!queue.empty()) {
    const State y = queue.back();
    queue.pop_back();
    for (State x = 0; x < count; ++x) {
      if (!reach[x] && x != y && chain.probability(x, y) > 0.0) {
        reach[x] = 1;
        queue.push_back(x);
      }
    }
  }
  return reach;
}

std::vector<double> resolve_start(const ExactChain& chain, std::span<const double> start) {
  const std::size_t count = chain.states();
  if (start.empty()) return std::vector<double>(count, 1.0 / static_cast<double>(count));
  if (start.size() != count) {
    throw AnalysisError("start distribution has " + std::to_string(start.size()) +
                        " entries, chain has " + std::to_string(count) + " states");
  }
  return {start.begin(), start.end()};
}

// Unknowns ordered by ascending fitness: then row i only reaches columns of
// its own fitness level or above, and elimination only touches same-level rows.
std::vector<State> order_unknowns(const ExactChain& chain, const std::vector<char>& include) {
  std::vector<State> order;
  for (State s = 0; s < chain.states(); ++s) {
    if (include[s]) order.push_back(s);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](State a, State b) { return chain.fitness(a) < chain.fitness(b); });
  return order;
}

/// Solves (I - Q) h = rhs over `unknowns` by dense Gaussian elimination.
/// I - Q is a nonsingular M-matrix here (every unknown leaks to absorption),
/// so elimination runs without pivoting.
std::vector<double> solve_transient(const ExactChain& chain, const std::vector<State>& unknowns,
                                    std::vector<double> rhs) {
  const std::size_t m = unknowns.size();
  if (m == 0) return {};
  if (m >= kAnnounceUnknowns) {
    std::clog << "analytic: dense solve over " << m << " unknowns, ~"
              << dense_memory_bytes(m) / (1024 * 1024) << " MiB\n";
  }
  std::vector<std::size_t> column(chain.states(), m);
  for (std::size_t i = 0; i < m; ++i) column[unknowns[i]] = i;

  std::vector<double> a(m * m, 0.0);
  std::vector<double> row(chain.states());
  for (std::size_t i = 0; i < m; ++i) {
    chain.row(unknowns[i], row);
    double* ai = a.data() + i * m;
    for (State y = 0; y < chain.states(); ++y) {
      if (row[y] != 0.0 && column[y] < m) ai[column[y]] -= row[y];
    }
    ai[i] += 1.0;
  }

  const simd::Kernels& k = simd::active_kernels();
  for (std::size_t p = 0; p < m; ++p) {
    const double* ap = a.data() + p * m;
    const double pivot = ap[p];
    if (!(std::fabs(pivot) > 1e-300)) throw AnalysisError("singular hitting system");
    for (std::size_t i = p + 1; i < m; ++i) {
      double* ai = a.data() + i * m;
      if (ai[p] == 0.0) continue;
      const double l = ai[p] / pivot;
      ai[p] = 0.0;
      k.axpy(-l, ap + p + 1, ai + p + 1, m - p - 1);
      rhs[i] -= l * rhs[p];
    }
  }
  std::vector<double> h(m, 0.0);
  for (std::size_t p = m; p-- > 0;) {
    const double* ap = a.data() + p * m;
    const double tail = k.dot(ap + p + 1, h.data() + p + 1, m - p - 1);
    h[p] = (rhs[p] - tail) / ap[p];
  }
  return h;
}

}  // namespace

ExactChain::ExactChain(const FitnessSpec& spec, std::uint64_t n_mut)
    : spec_(spec), n_(spec.n()), n_mut_(n_mut) {
  if (n_ > kMaxBits) {
    throw AnalysisError("exact chain limited to n <= " + std::to_string(kMaxBits) + " (got " +
                        std::to_string(n_) + "); use Monte Carlo beyond that");
  }
  validated(MutationParams{n_mut});
  const std::size_t count = states();
  fitness_.resize(count);
  for (State s = 0; s < count; ++s) fitness_[s] = spec.evaluate(BitString::from_index(s, n_));

  const double p = 1.0 / static_cast<double>(n_mut);
  by_distance_.resize(n_ + 1);
  for (std::size_t d = 0; d <= n_; ++d) {
    by_distance_[d] = std::pow(p, static_cast<double>(d)) * std::pow(1.0 - p, static_cast<double>(n_ - d));
  }
  // Sum the rejected (and null) moves directly rather than 1 - accepted.
  stay_.resize(count);
  for (State x = 0; x < count; ++x) {
    double mass = by_distance_[0];
    for (State y = 0; y < count; ++y) {
      if (y != x && fitness_[y] < fitness_[x]) mass += by_distance_[std::popcount(x ^ y)];
    }
    stay_[x] = mass;
  }
}

double ExactChain::probability(State from, State to) const {
  if (from == to) return stay_[from];
  if (fitness_[to] < fitness_[from]) return 0.0;
  return by_distance_[std::popcount(from ^ to)];
}

void ExactChain::row(State from, std::span<double> out) const {
  const FitnessValue f = fitness_[from];
  for (State y = 0; y < out.size(); ++y) {
    out[y] = fitness_[y] >= f ? by_distance_[std::popcount(from ^ y)] : 0.0;
  }
  out[from] = stay_[from];
}

State ExactChain::encode(const BitString& x) const {
  if (x.size() != n_) throw AnalysisError("state length does not match chain");
  return static_cast<State>(x.to_index());
}

ExactChain build_chain(const FitnessSpec& spec, std::uint64_t n_mut) {
  return ExactChain(spec, n_mut);
}

std::size_t dense_memory_bytes(std::size_t unknowns) {
  return unknowns * unknowns * sizeof(double) + 4 * unknowns * sizeof(double);
}

double expected_hitting_time(const ExactChain& chain, std::span<const State> targets,
                             std::span<const double> start_in) {
  const std::size_t count = chain.states();
  std::vector<char> is_target(count, 0);
  for (State t : targets) {
    if (t >= count) throw AnalysisError("target state out of range");
    is_target[t] = 1;
  }
  if (targets.empty()) throw AnalysisError("no target states");
  const std::vector<double> start = resolve_start(chain, start_in);

  const std::vector<char> reach = backward_closure(chain, is_target);
  const std::vector<char> live = forward_closure(chain, start, is_target);
  for (State s = 0; s < count; ++s) {
    if (live[s] && !reach[s]) {
      throw AnalysisError("target unreachable from state " +
                          BitString::from_index(s, chain.bits()).to_string());
    }
  }
  const std::vector<State> unknowns = order_unknowns(chain, live);
  const std::vector<double> h = solve_transient(chain, unknowns, std::vector<double>(unknowns.size(), 1.0));
  double expected = 0.0;
  for (std::size_t i = 0; i < unknowns.size(); ++i) expected += start[unknowns[i]] * h[i];
  return expected;
}

double hitting_probability(const ExactChain& chain, State a, State b,
                           std::span<const double> start_in) {
  const std::size_t count = chain.states();
  if (a >= count || b >= count) throw AnalysisError("state out of range");
  if (a == b) throw AnalysisError("hitting_probability needs two distinct states");
  const std::vector<double> start = resolve_start(chain, start_in);

  std::vector<char> absorbing(count, 0);
  absorbing[a] = 1;
  absorbing[b] = 1;
  const std::vector<char> reach = backward_closure(chain, absorbing);
  for (State s = 0; s < count; ++s) {
    if (start[s] > 0.0 && !reach[s]) {
      throw AnalysisError("neither state reachable from start state " +
                          BitString::from_index(s, chain.bits()).to_string());
    }
  }
  std::vector<char> live = forward_closure(chain, start, absorbing);
  // States that can never be absorbed contribute probability 0.
  for (State s = 0; s < count; ++s) live[s] = live[s] && reach[s];

  const std::vector<State> unknowns = order_unknowns(chain, live);
  std::vector<double> rhs(unknowns.size());
  for (std::size_t i = 0; i < unknowns.size(); ++i) rhs[i] = chain.probability(unknowns[i], a);
  const std::vector<double> h = solve_transient(chain, unknowns, std::move(rhs));

  double prob = start[a];
  for (std::size_t i = 0; i < unknowns.size(); ++i) prob += start[unknowns[i]] * h[i];
  return prob;
}

double exact_lo_runtime(std::size_t n) {
  if (n < 2) throw ConfigError("exact_lo_runtime needs n >= 2");
  const double nd = static_cast<double>(n);
  const double ratio = nd / (nd - 1.0);
  return (std::pow(ratio, nd - 1.0) + 1.0 / nd - 1.0) / 2.0 * nd * nd;
}

double lo_block_runtime(std::size_t n, std::size_t k, double inner_expected) {
  if (n < 2) throw ConfigError("lo_block_runtime needs n >= 2");
  if (k == 0 || n % k != 0) throw ConfigError("lo_block_runtime needs k | n");
  if (inner_expected < 0.0) throw ConfigError("inner expectation must be non-negative");
  const double nd = static_cast<double>(n);
  // (ratio^n - 1) / (ratio^k - 1) computed with expm1 for accuracy.
  const double log_ratio = std::log1p(1.0 / (nd - 1.0));
  const double factor = std::expm1(nd * log_ratio) / std::expm1(static_cast<double>(k) * log_ratio);
  return inner_expected * factor;
}

GeometricBounds geometric_min_bounds(double expected_single, std::size_t m) {
  if (expected_single < 1.0) throw ConfigError("expected single-agent time must be >= 1");
  if (m == 0) throw ConfigError("agent count must be >= 1");
  const double md = static_cast<double>(m);
  const double p = 1.0 / expected_single;
  GeometricBounds b;
  b.lower = expected_single / (2.0 * md);
  // 1 - (1-p)^m = -expm1(m * log1p(-p)); p = 1 gives an exact 1.
  b.exact = p >= 1.0 ? 1.0 : -1.0 / std::expm1(md * std::log1p(-p));
  b.upper = expected_single / md + 1.0;
  return b;
}

double choose_sum_div(std::size_t n) {
  if (n == 0) throw ConfigError("choose_sum_div needs n >= 1");
  const double nd = static_cast<double>(n);
  const double log_norm = std::lgamma(nd + 1.0) - nd * std::log(2.0);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double log_term = log_norm - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    sum += std::exp(log_term) * nd / kd;
  }
  return sum;
}

BlackBoxRun black_box_fork(std::size_t n, std::size_t r, std::uint64_t seed) {
  const FitnessSpec spec = FitnessSpec::fork(n, r);
  const OptimumWitness& w = spec.optimum();
  const BitString ones = BitString::ones(n);

  BlackBoxRun out;
  // 1^n is the only point of fitness n; valley and optimum score above it.
  const auto done = [n](const EaState& s) { return s.current_fitness >= n; };
  const EaRunResult ea = ea_run(spec, MutationParams{n}, seed, done, kBlackBoxEaCap);
  out.ea_evaluations = ea.state.evaluations + 1;
  if (ea.state.current_fitness == w.optimum_value) {
    out.found_by_ea = true;
    return out;
  }

  std::vector<std::size_t> flips(r);
  std::iota(flips.begin(), flips.end(), std::size_t{0});
  while (true) {
    BitString candidate = ones;
    for (std::size_t i : flips) candidate.flip(i);
    ++out.enumeration_evaluations;
    if (spec.evaluate(candidate) == w.optimum_value) break;
    // Next r-subset of {0..n-1} in lexicographic order.
    std::size_t i = r;
    while (i > 0 && flips[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++flips[i - 1];
    for (std::size_t j = i; j < r; ++j) flips[j] = flips[j - 1] + 1;
  }
  return out;
}

}  // namespace islandevo::analytic
