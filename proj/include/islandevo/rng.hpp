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
#include <initializer_list>
#include <string_view>

namespace islandevo {

// SplitMix64 finalizer. Every derived seed in the project goes through this.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds each part into the running state: s = mix64(s ^ mix64(part)).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

// 64-bit FNV-1a, used to turn scenario names into seed material.
std::uint64_t fnv1a64(std::string_view text);

// xoshiro256** seeded through SplitMix64.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

  std::uint64_t next();

  // Uniform in [0, 1) with 53 bits.
  double uniform01();

  // Uniform in [0, bound), bound > 0. Unbiased (Lemire).
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p);

  // Trials up to and including the first success of Bernoulli(p); >= 1.
  // p >= 1 returns 1, p <= 0 returns the max value ("never").
  std::uint64_t geometric(double p);

 private:
  std::uint64_t s_[4];
};

}  // namespace islandevo
