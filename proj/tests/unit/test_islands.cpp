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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "islandevo/ea.hpp"
#include "islandevo/error.hpp"
#include "islandevo/islands.hpp"

using namespace islandevo;

namespace {

BitString with_ones(std::size_t n, std::size_t ones, std::size_t shift = 0) {
  BitString x(n);
  for (std::size_t i = 0; i < ones; ++i) x.set((i + shift) % n, true);
  return x;
}

IslandRunConfig config(const FitnessSpec& spec, const Topology& topology, std::uint64_t seed) {
  IslandRunConfig cfg(spec, topology);
  cfg.seed = seed;
  return cfg;
}

std::vector<FitnessValue> fitnesses(const IslandModel& model) {
  std::vector<FitnessValue> out;
  for (const Island& island : model.state().islands) out.push_back(island.f);
  return out;
}

}  // namespace

TEST_CASE("complete(3) migration with fitnesses 5, 7, 7") {
  const FitnessSpec spec = FitnessSpec::onemax(10);
  const BitString a = with_ones(10, 5);
  const BitString b = with_ones(10, 7, 1);
  const BitString c = with_ones(10, 7, 3);
  std::size_t picked_b = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    IslandModel model(config(spec, Topology::complete(3), seed));
    model.set_incumbent(0, a);
    model.set_incumbent(1, b);
    model.set_incumbent(2, c);
    model.migration_phase();
    const auto& isl = model.state().islands;
    REQUIRE(fitnesses(model) == std::vector<FitnessValue>{7, 7, 7});
    REQUIRE((isl[0].x == b || isl[0].x == c));
    picked_b += isl[0].x == b;
    // The only 7 among island 1's neighbours is c, and vice versa.
    REQUIRE(isl[1].x == c);
    REQUIRE(isl[2].x == b);
  }
  CHECK(picked_b > 140);
  CHECK(picked_b < 260);
}

TEST_CASE("isolated migration changes nothing") {
  const FitnessSpec spec = FitnessSpec::onemax(12);
  IslandModel model(config(spec, Topology::isolated(4), 3));
  const auto before = model.state().islands;
  model.migration_phase();
  for (std::size_t j = 0; j < 4; ++j) CHECK(model.state().islands[j].x == before[j].x);
}

TEST_CASE("migration result does not depend on island order") {
  const FitnessSpec spec = FitnessSpec::fork(10, 2);
  for (TopologyKind kind : {TopologyKind::Ring, TopologyKind::Complete}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      IslandRunConfig cfg = config(spec, Topology(kind, 7), seed);
      cfg.fast_forward = false;
      IslandModel a(cfg);
      IslandModel b(cfg);
      for (int r = 0; r < 15; ++r) {
        a.mutation_phase();
        b.mutation_phase();
      }
      std::vector<std::size_t> order(7);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::reverse(order.begin(), order.end());
      std::rotate(order.begin(), order.begin() + 3, order.end());
      a.migration_phase();
      b.migration_phase(order);
      for (std::size_t j = 0; j < 7; ++j) {
        REQUIRE(a.state().islands[j].x == b.state().islands[j].x);
        REQUIRE(a.state().islands[j].f == b.state().islands[j].f);
      }
    }
  }
}

TEST_CASE("complete migration levels every island to the pre-migration maximum") {
  const FitnessSpec spec = FitnessSpec::leading_ones(20);
  IslandRunConfig cfg = config(spec, Topology::complete(6), 17);
  cfg.tau = Tau::every(3);
  cfg.fast_forward = false;
  IslandModel model(cfg);
  int migrations = 0;
  for (int r = 0; r < 300 && !model.terminated(); ++r) {
    const bool due = model.migration_due();
    const auto before = fitnesses(model);
    model.mutation_phase();
    const auto after_mutation = fitnesses(model);
    for (std::size_t j = 0; j < before.size(); ++j) REQUIRE(after_mutation[j] >= before[j]);
    if (due) {
      ++migrations;
      const FitnessValue top = *std::max_element(after_mutation.begin(), after_mutation.end());
      model.migration_phase();
      for (FitnessValue f : fitnesses(model)) REQUIRE(f == top);
    }
    model.finish_round(due);
    for (const Island& island : model.state().islands) REQUIRE(island.f == spec(island.x));
  }
  CHECK(migrations > 0);
}

TEST_CASE("without migration each island follows its own (1+1) EA trajectory") {
  const FitnessSpec spec = FitnessSpec::leading_ones(12);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    IslandRunConfig cfg = config(spec, Topology::ring(5), seed);
    cfg.tau = Tau::infinite();
    cfg.fast_forward = false;
    const RunRecord rec = island_run(cfg);
    REQUIRE(rec.satisfied);
    CHECK(rec.migration_rounds.empty());
    for (std::size_t j = 0; j < 5; ++j) {
      RngStream rng(island_stream_seed(seed, j));
      const auto ea = ea_run(spec, {12}, rng, stop_at_optimum(spec), 1'000'000);
      REQUIRE(rec.hit_rounds[j].has_value());
      CHECK(*rec.hit_rounds[j] == ea.state.evaluations);
    }
  }
}

TEST_CASE("isolated any-optimal equals the earliest of independent runs") {
  const FitnessSpec spec = FitnessSpec::onemax(20);
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    IslandRunConfig cfg = config(spec, Topology::isolated(4), seed);
    cfg.termination = Termination::AnyOptimal;
    cfg.fast_forward = false;
    const RunRecord rec = island_run(cfg);
    std::uint64_t best = kNever;
    for (std::size_t j = 0; j < 4; ++j) {
      RngStream rng(island_stream_seed(seed, j));
      best = std::min(best, ea_run(spec, {20}, rng, stop_at_optimum(spec), 1'000'000).state.evaluations);
    }
    CHECK(rec.rounds == best);
    CHECK(rec.evaluations == 4 * rec.rounds);
    CHECK(rec.initial_evaluations == 4);
  }
}

TEST_CASE("optimum spreads to every island in one complete migration") {
  const FitnessSpec spec = FitnessSpec::fork(8, 2);
  IslandRunConfig cfg = config(spec, Topology::complete(5), 4);
  cfg.fast_forward = false;
  IslandModel model(cfg);
  model.set_incumbent(2, spec.optimum().optimum);
  model.set_incumbent(3, *spec.optimum().valley);
  model.migration_phase();
  for (const Island& island : model.state().islands) CHECK(spec.is_optimal(island.f));
}

TEST_CASE("ring spreads the optimum by at most two islands per migration") {
  const FitnessSpec spec = FitnessSpec::fork(8, 2);
  IslandRunConfig cfg = config(spec, Topology::ring(9), 4);
  cfg.fast_forward = false;
  IslandModel model(cfg);
  for (std::size_t j = 0; j < 9; ++j) model.set_incumbent(j, BitString::ones(8));
  model.set_incumbent(0, spec.optimum().optimum);
  std::size_t holders = 1;
  int events = 0;
  while (holders < 9) {
    model.migration_phase();
    ++events;
    std::size_t now = 0;
    for (const Island& island : model.state().islands) now += spec.is_optimal(island.f);
    CHECK(now <= holders + 2);
    holders = now;
  }
  CHECK(events >= 4);  // ceil((9 - 2) / 2)
}

TEST_CASE("valley bookkeeping") {
  const FitnessSpec spec = FitnessSpec::fork(8, 2);
  IslandModel model(config(spec, Topology::ring(4), 1));
  model.set_incumbent(1, *spec.optimum().valley);
  model.set_incumbent(2, *spec.optimum().valley);
  CHECK(model.state().valley_count == 2);
  CHECK(model.state().peak_valleys >= 2);
  CHECK(model.state().islands[1].visited_valley);
}

TEST_CASE("fast-forward matches stepwise simulation in distribution") {
  struct Case {
    FitnessSpec spec;
    Topology topology;
    Tau tau;
    Termination termination;
  };
  const Case cases[] = {
      {FitnessSpec::fork(8, 2), Topology::isolated(1), Tau::infinite(), Termination::AnyOptimal},
      {FitnessSpec::fork(8, 2), Topology::complete(4), Tau::every(10), Termination::AllOptimal},
      {FitnessSpec::fork(8, 2), Topology::ring(5), Tau::every(20), Termination::AllOptimal},
      {FitnessSpec::masked_fork(8, 2), Topology::isolated(3), Tau::infinite(), Termination::AllOptimal},
  };
  for (const Case& c : cases) {
    IslandRunConfig cfg(c.spec, c.topology);
    cfg.tau = c.tau;
    cfg.termination = c.termination;
    cfg.fast_forward = true;
    const auto fast = monte_carlo_runtime(cfg, 4000, 1234, 2);
    cfg.fast_forward = false;
    const auto slow = monte_carlo_runtime(cfg, 4000, 5678, 2);
    const double se = std::hypot(fast.rounds.stderr_mean, slow.rounds.stderr_mean);
    INFO(c.spec.name() << " " << to_string(c.topology.kind()) << ": " << fast.rounds.mean << " vs "
                       << slow.rounds.mean << " se " << se);
    CHECK(std::fabs(fast.rounds.mean - slow.rounds.mean) < 4 * se);
    CHECK(std::fabs(fast.rounds.median - slow.rounds.median) < 0.25 * slow.rounds.median + 5);
    CHECK(std::fabs(fast.mean_peak_valleys - slow.mean_peak_valleys) < 0.15 + 0.1 * slow.mean_peak_valleys);
  }
}

TEST_CASE("monte carlo is independent of thread count and reports traps") {
  IslandRunConfig cfg(FitnessSpec::fork(10, 2), Topology::ring(5));
  cfg.tau = Tau::every(20);
  const auto a = monte_carlo_runtime(cfg, 300, 77, 1);
  const auto b = monte_carlo_runtime(cfg, 300, 77, 3);
  CHECK(a.rounds_samples == b.rounds_samples);
  CHECK(a.mean_peak_valleys == b.mean_peak_valleys);
  CHECK(a.rounds.mean == b.rounds.mean);

  cfg.cap = 2;
  const auto trapped = monte_carlo_runtime(cfg, 20, 1, 2);
  CHECK(trapped.status == MonteCarloResult::Status::AllTrapped);
  CHECK(trapped.trapped == 20);
  CHECK(trapped.completed == 0);

  CHECK_THROWS_AS(monte_carlo_runtime(cfg, 0, 1), ConfigError);
}

TEST_CASE("config validation") {
  IslandRunConfig cfg(FitnessSpec::onemax(5), Topology::complete(2));
  cfg.cap = 0;
  CHECK_THROWS_AS(island_run(cfg), ConfigError);
  CHECK_THROWS_AS(Tau::every(0), ConfigError);
  CHECK(parse_termination("all_optimal") == Termination::AllOptimal);
  CHECK_THROWS_AS(parse_termination("some"), ConfigError);
}
