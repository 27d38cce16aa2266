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
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "islandevo/bitstring.hpp"
#include "islandevo/ea.hpp"
#include "islandevo/fitness.hpp"
#include "islandevo/rng.hpp"
#include "islandevo/stats.hpp"
#include "islandevo/topology.hpp"

namespace islandevo {

inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

// Migration happens in a round with probability 1/tau; an empty value means
// never (tau = infinity).
class Tau {
 public:
  static Tau infinite() { return Tau{}; }
  static Tau every(std::uint64_t tau);

  bool is_infinite() const { return !value_; }
  std::uint64_t value() const { return value_.value_or(0); }
  double probability() const { return value_ ? 1.0 / static_cast<double>(*value_) : 0.0; }

 private:
  std::optional<std::uint64_t> value_;
};

enum class Termination { AnyOptimal, AllOptimal };

std::string_view to_string(Termination t);
Termination parse_termination(std::string_view token);

struct IslandRunConfig {
  IslandRunConfig(FitnessSpec spec_in, Topology topology_in)
      : spec(std::move(spec_in)), topology(std::move(topology_in)) {}

  FitnessSpec spec;
  Topology topology;
  Tau tau = Tau::infinite();
  Termination termination = Termination::AllOptimal;
  std::uint64_t cap = 1'000'000;  // max rounds
  std::uint64_t seed = 0;
  // 0 selects the spec's own length as the mutation denominator.
  std::uint64_t n_mut = 0;
  // Skip rounds in which no island can change (see IslandModel).
  bool fast_forward = true;

  std::size_t lambda() const { return topology.lambda(); }
  MutationParams mutation() const { return {n_mut == 0 ? spec.n() : n_mut}; }
  void validate() const;
};

enum class FirstSpecial { None, Valley, Optimum };

struct Island {
  BitString x;
  FitnessValue f = 0;
  std::optional<std::uint64_t> hit_round;
  FirstSpecial first_special = FirstSpecial::None;
  bool visited_valley = false;
  // Fast-forward bookkeeping: round in which a valley incumbent mutates into
  // the optimum.
  std::uint64_t escape_round = kNever;
};

struct IslandState {
  std::vector<Island> islands;
  std::uint64_t t = 0;
  std::vector<std::uint64_t> migration_rounds;
  std::size_t valley_count = 0;
  // Largest valley_count at the end of a round (after any migration).
  std::size_t peak_valleys = 0;
};

struct RunRecord {
  std::uint64_t rounds = 0;
  std::uint64_t evaluations = 0;  // lambda * rounds
  std::uint64_t initial_evaluations = 0;
  bool satisfied = false;
  bool trapped_at_cap = false;
  std::vector<std::optional<std::uint64_t>> hit_rounds;
  std::vector<std::uint64_t> migration_rounds;
  std::size_t peak_valleys = 0;
  // Per island: the valley was an incumbent before the optimum was.
  std::vector<bool> valley_before_optimum;
};

// Seeds of the per-island and the migration-coin streams of one run.
std::uint64_t island_stream_seed(std::uint64_t run_seed, std::size_t island);
std::uint64_t migration_stream_seed(std::uint64_t run_seed);

/// Lockstep island model of (1+1) EAs.
///
/// Each round draws one global migration coin, lets every island do one
/// mutation + selection step, and, if the coin came up, runs a two-phase
/// migration: all post-selection incumbents are snapshotted first, then each
/// island draws a uniformly random max-fitness individual among its
/// neighbours' snapshots (ascending neighbour order, island's own stream)
/// and adopts it if it is not worse. Migrants carry their fitness, so
/// migration costs no evaluations.
///
/// The coin is realized as geometric gaps between migration rounds on the
/// global stream. With fast_forward, an island holding the optimum is left
/// alone (no offspring can be accepted there) and an island holding a trap
/// valley draws the round in which its mutation hits the optimum; when no
/// island needs stepwise simulation the clock jumps to the next event.
class IslandModel {
 public:
  explicit IslandModel(IslandRunConfig cfg);

  const IslandRunConfig& config() const { return cfg_; }
  const IslandState& state() const { return state_; }

  // Replaces island j's incumbent (re-evaluated). Used to set up states.
  void set_incumbent(std::size_t j, BitString x);

  // Whether the coin of the next round comes up.
  bool migration_due() const { return next_migration_ == state_.t + 1; }

  // One full round.
  void round();

  // Exposed phases. A round is mutation_phase(), then migration_phase() when
  // due, then finish_round().
  void mutation_phase();
  // Island adoption order may be permuted; the result does not depend on it.
  void migration_phase(std::span<const std::size_t> order = {});
  void finish_round(bool migrated);

  bool terminated() const;
  RunRecord run();

 private:
  bool is_valley(const Island& island) const;
  void note_incumbent(Island& island, std::uint64_t round, RngStream& rng, bool was_valley);
  void recount_valleys();
  bool all_passive() const;
  std::uint64_t next_event() const;
  void schedule_migration(std::uint64_t after);

  IslandRunConfig cfg_;
  MutationParams mutation_;
  IslandState state_;
  std::vector<RngStream> island_rng_;
  RngStream migration_rng_;
  std::uint64_t next_migration_ = kNever;
  double escape_probability_ = 0.0;
  BitString scratch_;
  std::vector<BitString> snapshot_x_;
  std::vector<FitnessValue> snapshot_f_;
};

RunRecord island_run(const IslandRunConfig& cfg);

struct MonteCarloResult {
  enum class Status { Ok, AllTrapped };

  Status status = Status::Ok;
  std::size_t replicates = 0;
  std::size_t completed = 0;
  std::size_t trapped = 0;
  stats::SampleStats rounds;
  stats::SampleStats evaluations;
  double mean_migrations = 0.0;
  double mean_peak_valleys = 0.0;
  // Per completed replicate, in replicate order.
  std::vector<double> rounds_samples;
  std::vector<double> evaluation_samples;
  std::vector<double> peak_valley_samples;
};

// Seed of replicate i: derive_seed(master_seed, {i}).
std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t replicate);

// Runs `replicates` independent runs of cfg (cfg.seed is replaced per
// replicate) on `threads` workers. Output is identical for any thread count.
// Trapped replicates are counted but excluded from every statistic.
MonteCarloResult monte_carlo_runtime(const IslandRunConfig& cfg, std::size_t replicates,
                                     std::uint64_t master_seed, std::size_t threads = 1);

// Replicate-parallel map with deterministic placement of results.
template <typename Fn>
void parallel_for_index(std::size_t count, std::size_t threads, Fn&& fn);

}  // namespace islandevo

#include "islandevo/detail/parallel.hpp"
