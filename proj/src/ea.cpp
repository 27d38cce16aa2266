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

#include "islandevo/ea.hpp"

#include "islandevo/error.hpp"

namespace islandevo {

MutationParams validated(MutationParams params) {
  if (params.n_mut == 0) throw ConfigError("mutation denominator n_mut must be >= 1");
  return params;
}

std::size_t mutate_in_place(BitString& child, MutationParams params, RngStream& rng) {
  const std::uint64_t n = child.size();
  const double p = params.flip_probability();
  std::size_t flips = 0;
  // Positions of successes in a Bernoulli(p) sequence are spaced by
  // independent geometric gaps.
  std::uint64_t pos = rng.geometric(p) - 1;
  while (pos < n) {
    child.flip(static_cast<std::size_t>(pos));
    ++flips;
    const std::uint64_t gap = rng.geometric(p);
    if (gap > n) break;
    pos += gap;
  }
  return flips;
}

BitString standard_bit_mutation(const BitString& x, MutationParams params, RngStream& rng) {
  BitString y = x;
  mutate_in_place(y, validated(params), rng);
  return y;
}

bool ea_step(EaState& state, const FitnessSpec& spec, MutationParams params, RngStream& rng) {
  BitString offspring = state.current;
  const std::size_t flips = mutate_in_place(offspring, params, rng);
  ++state.evaluations;
  // A clone scores the parent's fitness and is adopted on the tie.
  if (flips == 0) return true;
  const FitnessValue f = spec.evaluate(offspring);
  if (f >= state.current_fitness) {
    state.current = std::move(offspring);
    state.current_fitness = f;
    return true;
  }
  return false;
}

EaState ea_initial_state(const FitnessSpec& spec, RngStream& rng) {
  EaState state;
  state.current = BitString::random(spec.n(), rng);
  state.current_fitness = spec.evaluate(state.current);
  return state;
}

StopPredicate stop_at_optimum(const FitnessSpec& spec) {
  return [opt = spec.optimum().optimum_value](const EaState& s) {
    return s.current_fitness == opt;
  };
}

EaRunResult ea_run(const FitnessSpec& spec, MutationParams params, RngStream& rng,
                   const StopPredicate& stop, std::uint64_t cap) {
  if (cap == 0) throw ConfigError("ea_run cap must be positive");
  params = validated(params);
  EaRunResult result;
  result.state = ea_initial_state(spec, rng);
  while (true) {
    if (stop(result.state)) {
      result.hit = true;
      break;
    }
    if (result.state.evaluations >= cap) break;
    ea_step(result.state, spec, params, rng);
  }
  return result;
}

EaRunResult ea_run(const FitnessSpec& spec, MutationParams params, std::uint64_t seed,
                   const StopPredicate& stop, std::uint64_t cap) {
  RngStream rng(seed);
  return ea_run(spec, params, rng, stop, cap);
}

}  // namespace islandevo
