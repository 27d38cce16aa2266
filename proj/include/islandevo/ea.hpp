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

#include <cstdint>
#include <functional>

#include "islandevo/bitstring.hpp"
#include "islandevo/fitness.hpp"
#include "islandevo/rng.hpp"

namespace islandevo {

// Each bit flips independently with probability 1 / n_mut. n_mut may exceed
// the string length (a k-bit block mutated at rate 1/n).
struct MutationParams {
  std::uint64_t n_mut = 1;

  double flip_probability() const { return 1.0 / static_cast<double>(n_mut); }
};

MutationParams validated(MutationParams params);

struct EaState {
  BitString current;
  FitnessValue current_fitness = 0;
  // Loop iterations so far; the initial evaluation is not counted.
  std::uint64_t evaluations = 0;
};

// Flips the bits of `child` (already a copy of the parent) with
// geometric gap-skipping. Returns the number of flipped bits.
std::size_t mutate_in_place(BitString& child, MutationParams params, RngStream& rng);

BitString standard_bit_mutation(const BitString& x, MutationParams params, RngStream& rng);

// One iteration: mutate, evaluate, keep the offspring if it is not worse.
// Returns true when the offspring replaced the parent.
bool ea_step(EaState& state, const FitnessSpec& spec, MutationParams params, RngStream& rng);

EaState ea_initial_state(const FitnessSpec& spec, RngStream& rng);

struct EaRunResult {
  EaState state;
  bool hit = false;
};

using StopPredicate = std::function<bool(const EaState&)>;

// Stops as soon as the incumbent is the global optimum.
StopPredicate stop_at_optimum(const FitnessSpec& spec);

// Uniform start, then ea_step until `stop` holds or `cap` iterations ran.
// The predicate is checked before every iteration, so an optimal start
// returns after zero iterations.
EaRunResult ea_run(const FitnessSpec& spec, MutationParams params, std::uint64_t seed,
                   const StopPredicate& stop, std::uint64_t cap);

// Same as above on an existing stream (the island model reuses this).
EaRunResult ea_run(const FitnessSpec& spec, MutationParams params, RngStream& rng,
                   const StopPredicate& stop, std::uint64_t cap);

}  // namespace islandevo
