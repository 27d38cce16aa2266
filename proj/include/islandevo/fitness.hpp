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
#include <memory>
#include <optional>
#include <string>

#include "islandevo/bitstring.hpp"

namespace islandevo {

// All in-scope functions are integer valued, so selection compares exactly.
using FitnessValue = std::uint64_t;

enum class Variant { OneMax, LeadingOnes, Fork, Masked, LOBlock, OMBlock };

struct OptimumWitness {
  BitString optimum;
  FitnessValue optimum_value = 0;
  // Local optimum of Fork-derived specs; absent otherwise.
  std::optional<BitString> valley;
  FitnessValue valley_value = 0;
};

/// Declarative pseudo-Boolean fitness function over {0,1}^n.
///
/// Built only through the named factories, which validate their arguments
/// and throw ConfigError. A spec is immutable and cheap to copy (composite
/// children are shared), and evaluate() is pure, so one spec may be used
/// from any number of threads.
///
/// Composite blocks use the same inner spec for every block. The inner spec
/// must have length k and unique optimum 1^k; wrap Fork with masked_fork()
/// to get there.
class FitnessSpec {
 public:
  static FitnessSpec onemax(std::size_t n);
  static FitnessSpec leading_ones(std::size_t n);
  // Requires r >= 2 and n >= 2r.
  static FitnessSpec fork(std::size_t n, std::size_t r);
  // Evaluates inner at x XOR mask.
  static FitnessSpec masked(BitString mask, const FitnessSpec& inner);
  // Fork(n, r) behind the mask 0^{n-r} 1^r, moving the optimum to 1^n.
  static FitnessSpec masked_fork(std::size_t n, std::size_t r);
  static FitnessSpec lo_block(std::size_t n, std::size_t k, const FitnessSpec& inner);
  static FitnessSpec om_block(std::size_t n, std::size_t k, const FitnessSpec& inner);

  Variant variant() const;
  std::size_t n() const;
  // Fork radius of this spec or of the Fork it is built from; 0 if none.
  std::size_t r() const;
  // Block length for LOBlock/OMBlock, 0 otherwise.
  std::size_t k() const;
  const BitString& mask() const;
  // Wrapped spec for Masked/LOBlock/OMBlock. Throws on base variants.
  const FitnessSpec& inner() const;

  FitnessValue evaluate(const BitString& x) const;
  FitnessValue operator()(const BitString& x) const { return evaluate(x); }

  const OptimumWitness& optimum() const;
  bool is_optimal(FitnessValue f) const;

  // True when the witness valley is a trap: the only strictly better point
  // in the whole space is the optimum, and nothing else ties with it.
  bool has_trap() const;

  // Compact descriptor such as "fork" or "lo_block(masked(fork))".
  std::string name() const;

 private:
  struct Node;
  explicit FitnessSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct FitnessSpec::Node {
  Variant variant = Variant::OneMax;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  BitString mask;
  std::optional<FitnessSpec> inner;
  OptimumWitness witness;
  bool trap = false;
  // Inner value at 1^k, cached for LOBlock.
  FitnessValue block_ones_value = 0;
};

inline Variant FitnessSpec::variant() const { return node_->variant; }
inline std::size_t FitnessSpec::n() const { return node_->n; }
inline std::size_t FitnessSpec::r() const { return node_->r; }
inline std::size_t FitnessSpec::k() const { return node_->k; }
inline const BitString& FitnessSpec::mask() const { return node_->mask; }
inline const OptimumWitness& FitnessSpec::optimum() const { return node_->witness; }
inline bool FitnessSpec::is_optimal(FitnessValue f) const { return f == node_->witness.optimum_value; }
inline bool FitnessSpec::has_trap() const { return node_->trap; }

FitnessValue eval_onemax(const BitString& x);
FitnessValue eval_leadingones(const BitString& x);
FitnessValue eval_fork(const BitString& x, std::size_t r);
FitnessValue eval_masked(const BitString& x, const BitString& mask, const FitnessSpec& inner);
FitnessValue eval_lo_block(const BitString& x, std::size_t k, const FitnessSpec& inner);
FitnessValue eval_om_block(const BitString& x, std::size_t k, const FitnessSpec& inner);

inline const OptimumWitness& optimum_of(const FitnessSpec& spec) { return spec.optimum(); }

}  // namespace islandevo
