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

#include "islandevo/islands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "islandevo/error.hpp"

namespace islandevo {
namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kNever - b ? kNever : a + b;
}

}  // namespace

Tau Tau::every(std::uint64_t tau) {
  if (tau == 0) throw ConfigError("tau must be >= 1");
  Tau t;
  t.value_ = tau;
  return t;
}

std::string_view to_string(Termination t) {
  return t == Termination::AnyOptimal ? "any_optimal" : "all_optimal";
}

Termination parse_termination(std::string_view token) {
  if (token == "any_optimal" || token == "any") return Termination::AnyOptimal;
  if (token == "all_optimal" || token == "all") return Termination::AllOptimal;
  throw ConfigError("unknown termination '" + std::string(token) +
                    "' (expected any_optimal or all_optimal)");
}

void IslandRunConfig::validate() const {
  if (cap == 0) throw ConfigError("round cap must be positive");
  validated(mutation());
}

std::uint64_t island_stream_seed(std::uint64_t run_seed, std::size_t island) {
  return derive_seed(run_seed, {1, island});
}

std::uint64_t migration_stream_seed(std::uint64_t run_seed) { return derive_seed(run_seed, {0}); }

IslandModel::IslandModel(IslandRunConfig cfg)
    : cfg_(std::move(cfg)), migration_rng_(migration_stream_seed(cfg_.seed)) {
  cfg_.validate();
  mutation_ = cfg_.mutation();
  const std::size_t lambda = cfg_.lambda();
  const std::size_t n = cfg_.spec.n();

  if (cfg_.spec.has_trap()) {
    const OptimumWitness& w = cfg_.spec.optimum();
    const auto d = static_cast<double>(hamming_distance(*w.valley, w.optimum));
    const double p = mutation_.flip_probability();
    escape_probability_ = std::pow(p, d) * std::pow(1.0 - p, static_cast<double>(n) - d);
  }

  island_rng_.reserve(lambda);
  state_.islands.resize(lambda);
  for (std::size_t j = 0; j < lambda; ++j) {
    island_rng_.emplace_back(island_stream_seed(cfg_.seed, j));
    Island& island = state_.islands[j];
    island.x = BitString::random(n, island_rng_[j]);
    island.f = cfg_.spec.evaluate(island.x);
    note_incumbent(island, 0, island_rng_[j], false);
  }
  snapshot_x_.resize(lambda);
  snapshot_f_.resize(lambda);
  schedule_migration(0);
  recount_valleys();
}

void IslandModel::set_incumbent(std::size_t j, BitString x) {
  Island& island = state_.islands.at(j);
  const bool was_valley = is_valley(island);
  island.f = cfg_.spec.evaluate(x);
  island.x = std::move(x);
  if (!is_valley(island)) island.escape_round = kNever;
  note_incumbent(island, state_.t, island_rng_[j], was_valley && is_valley(island));
  recount_valleys();
}

bool IslandModel::is_valley(const Island& island) const {
  const OptimumWitness& w = cfg_.spec.optimum();
  return w.valley && island.f == w.valley_value && island.x == *w.valley;
}

void IslandModel::note_incumbent(Island& island, std::uint64_t round, RngStream& rng,
                                 bool was_valley) {
  if (cfg_.spec.is_optimal(island.f)) {
    if (!island.hit_round) island.hit_round = round;
    if (island.first_special == FirstSpecial::None) island.first_special = FirstSpecial::Optimum;
    island.escape_round = kNever;
  } else if (is_valley(island)) {
    island.visited_valley = true;
    if (island.first_special == FirstSpecial::None) island.first_special = FirstSpecial::Valley;
    if (cfg_.fast_forward && cfg_.spec.has_trap() && !was_valley) {
      island.escape_round = saturating_add(round, rng.geometric(escape_probability_));
    }
  } else {
    island.escape_round = kNever;
  }
}

void IslandModel::schedule_migration(std::uint64_t after) {
  next_migration_ =
      cfg_.tau.is_infinite() ? kNever : saturating_add(after, migration_rng_.geometric(cfg_.tau.probability()));
}

void IslandModel::mutation_phase() {
  const std::uint64_t r = state_.t + 1;
  const OptimumWitness& w = cfg_.spec.optimum();
  for (std::size_t j = 0; j < state_.islands.size(); ++j) {
    Island& island = state_.islands[j];
    RngStream& rng = island_rng_[j];
    if (cfg_.fast_forward) {
      if (cfg_.spec.is_optimal(island.f)) continue;
      if (island.escape_round != kNever) {
        if (island.escape_round == r) {
          island.x = w.optimum;
          island.f = w.optimum_value;
          note_incumbent(island, r, rng, true);
        }
        continue;
      }
    }
    scratch_ = island.x;
    if (mutate_in_place(scratch_, mutation_, rng) == 0) continue;
    const FitnessValue f = cfg_.spec.evaluate(scratch_);
    if (f >= island.f) {
      const bool was_valley = is_valley(island);
      std::swap(island.x, scratch_);
      island.f = f;
      note_incumbent(island, r, rng, was_valley);
    }
  }
}

void IslandModel::migration_phase(std::span<const std::size_t> order) {
  const std::uint64_t r = state_.t + 1;
  const std::size_t lambda = state_.islands.size();
  for (std::size_t j = 0; j < lambda; ++j) {
    snapshot_x_[j] = state_.islands[j].x;
    snapshot_f_[j] = state_.islands[j].f;
  }
  std::vector<std::size_t> default_order;
  if (order.empty()) {
    default_order.resize(lambda);
    std::iota(default_order.begin(), default_order.end(), std::size_t{0});
    order = default_order;
  }
  std::vector<std::size_t> best;
  for (std::size_t j : order) {
    const auto& nbrs = cfg_.topology.neighbors(j);
    if (nbrs.empty()) continue;
    FitnessValue max_f = 0;
    for (std::size_t i : nbrs) max_f = std::max(max_f, snapshot_f_[i]);
    best.clear();
    for (std::size_t i : nbrs) {
      if (snapshot_f_[i] == max_f) best.push_back(i);
    }
    Island& island = state_.islands[j];
    RngStream& rng = island_rng_[j];
    const std::size_t pick = best.size() == 1 ? best[0] : best[rng.below(best.size())];
    if (max_f >= island.f) {
      const bool was_valley = is_valley(island);
      island.x = snapshot_x_[pick];
      island.f = max_f;
      note_incumbent(island, r, rng, was_valley);
    }
  }
}

void IslandModel::recount_valleys() {
  std::size_t count = 0;
  for (const Island& island : state_.islands) count += is_valley(island) ? 1 : 0;
  state_.valley_count = count;
  state_.peak_valleys = std::max(state_.peak_valleys, count);
}

void IslandModel::finish_round(bool migrated) {
  ++state_.t;
  recount_valleys();
  if (migrated) {
    state_.migration_rounds.push_back(state_.t);
    schedule_migration(state_.t);
  }
}

void IslandModel::round() {
  const bool migrate = migration_due();
  mutation_phase();
  if (migrate) migration_phase();
  finish_round(migrate);
}

bool IslandModel::terminated() const {
  const auto optimal = [this](const Island& island) { return cfg_.spec.is_optimal(island.f); };
  if (cfg_.termination == Termination::AnyOptimal) {
    return std::any_of(state_.islands.begin(), state_.islands.end(), optimal);
  }
  return std::all_of(state_.islands.begin(), state_.islands.end(), optimal);
}

bool IslandModel::all_passive() const {
  return std::all_of(state_.islands.begin(), state_.islands.end(), [this](const Island& island) {
    return cfg_.spec.is_optimal(island.f) || island.escape_round != kNever;
  });
}

std::uint64_t IslandModel::next_event() const {
  std::uint64_t next = next_migration_;
  for (const Island& island : state_.islands) next = std::min(next, island.escape_round);
  return next;
}

RunRecord IslandModel::run() {
  RunRecord out;
  while (true) {
    if (terminated()) {
      out.satisfied = true;
      break;
    }
    if (state_.t >= cfg_.cap) {
      out.trapped_at_cap = true;
      break;
    }
    if (cfg_.fast_forward && all_passive()) {
      // Every round before the next event leaves all incumbents unchanged.
      const std::uint64_t next = next_event();
      if (next == kNever || next > cfg_.cap) {
        state_.t = cfg_.cap;
        out.trapped_at_cap = true;
        break;
      }
      if (next > state_.t + 1) state_.t = next - 1;
    }
    round();
  }
  const std::size_t lambda = state_.islands.size();
  out.rounds = state_.t;
  out.evaluations = state_.t * lambda;
  out.initial_evaluations = lambda;
  out.migration_rounds = state_.migration_rounds;
  out.peak_valleys = state_.peak_valleys;
  out.hit_rounds.reserve(lambda);
  out.valley_before_optimum.reserve(lambda);
  for (const Island& island : state_.islands) {
    out.hit_rounds.push_back(island.hit_round);
    out.valley_before_optimum.push_back(island.first_special == FirstSpecial::Valley);
  }
  return out;
}

RunRecord island_run(const IslandRunConfig& cfg) {
  IslandModel model(cfg);
  return model.run();
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t replicate) {
  return derive_seed(master_seed, {replicate});
}

MonteCarloResult monte_carlo_runtime(const IslandRunConfig& cfg, std::size_t replicates,
                                     std::uint64_t master_seed, std::size_t threads) {
  if (replicates == 0) throw ConfigError("monte carlo needs at least one replicate");
  cfg.validate();

  struct Outcome {
    bool trapped = false;
    double rounds = 0.0;
    double evaluations = 0.0;
    double migrations = 0.0;
    double peak_valleys = 0.0;
  };
  std::vector<Outcome> outcomes(replicates);
  parallel_for_index(replicates, threads, [&](std::size_t i) {
    IslandRunConfig local = cfg;
    local.seed = replicate_seed(master_seed, i);
    const RunRecord rec = island_run(local);
    outcomes[i] = {rec.trapped_at_cap, static_cast<double>(rec.rounds),
                   static_cast<double>(rec.evaluations),
                   static_cast<double>(rec.migration_rounds.size()),
                   static_cast<double>(rec.peak_valleys)};
  });

  MonteCarloResult result;
  result.replicates = replicates;
  double migrations = 0.0;
  double peaks = 0.0;
  for (const Outcome& o : outcomes) {
    if (o.trapped) {
      ++result.trapped;
      continue;
    }
    ++result.completed;
    result.rounds_samples.push_back(o.rounds);
    result.evaluation_samples.push_back(o.evaluations);
    result.peak_valley_samples.push_back(o.peak_valleys);
    migrations += o.migrations;
    peaks += o.peak_valleys;
  }
  if (result.completed == 0) {
    result.status = MonteCarloResult::Status::AllTrapped;
    return result;
  }
  result.rounds = stats::summarize(result.rounds_samples);
  result.evaluations = stats::summarize(result.evaluation_samples);
  result.mean_migrations = migrations / static_cast<double>(result.completed);
  result.mean_peak_valleys = peaks / static_cast<double>(result.completed);
  return result;
}

}  // namespace islandevo
