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

#include "islandevo/fitness.hpp"

#include <bit>
#include <utility>

#include "islandevo/error.hpp"

namespace islandevo {
namespace {

// Index of the lowest set bit, or x.size() when x is all zeros.
std::size_t first_one(const BitString& x) {
  const auto words = x.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (words[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words[w]));
  }
  return x.size();
}

BitString fork_optimum(std::size_t n, std::size_t r) {
  BitString x(n);
  for (std::size_t i = 0; i < n - r; ++i) x.set(i, true);
  return x;
}

BitString fork_valley(std::size_t n, std::size_t r) {
  BitString x(n);
  for (std::size_t i = r; i < n; ++i) x.set(i, true);
  return x;
}

void check_block_inner(std::size_t n, std::size_t k, const FitnessSpec& inner) {
  if (k == 0 || n % k != 0) {
    throw ConfigError("block length k=" + std::to_string(k) + " must divide n=" + std::to_string(n));
  }
  if (inner.n() != k) {
    throw ConfigError("inner spec length " + std::to_string(inner.n()) +
                      " must equal block length " + std::to_string(k));
  }
  if (!(inner.optimum().optimum == BitString::ones(k))) {
    throw ConfigError("inner spec must have unique optimum 1^k; mask it first");
  }
}

}  // namespace

FitnessValue eval_onemax(const BitString& x) { return x.popcount(); }

FitnessValue eval_leadingones(const BitString& x) { return x.leading_ones(); }

FitnessValue eval_fork(const BitString& x, std::size_t r) {
  const std::size_t n = x.size();
  if (r > n) throw ConfigError("fork radius exceeds string length");
  const std::size_t ones = x.popcount();
  // Both special strings carry exactly n - r ones.
  if (ones == n - r) {
    if (x.leading_ones() == n - r) return n + 2;
    if (first_one(x) == r) return n + 1;
  }
  return ones;
}

FitnessValue eval_masked(const BitString& x, const BitString& mask, const FitnessSpec& inner) {
  if (mask.size() != x.size() || inner.n() != x.size()) {
    throw ConfigError("mask, inner spec and input must share one length");
  }
  return inner.evaluate(x ^ mask);
}

FitnessValue eval_lo_block(const BitString& x, std::size_t k, const FitnessSpec& inner) {
  const std::size_t n = x.size();
  if (k == 0 || n % k != 0) throw ConfigError("block length must divide n");
  const std::size_t full_blocks = x.leading_ones() / k;
  const FitnessValue ones_value = inner.evaluate(BitString::ones(k));
  FitnessValue total = ones_value * full_blocks;
  // The first non-all-ones block still has an all-ones prefix in front of it.
  if (full_blocks < n / k) total += inner.evaluate(x.slice(full_blocks * k, k));
  return total;
}

FitnessValue eval_om_block(const BitString& x, std::size_t k, const FitnessSpec& inner) {
  const std::size_t n = x.size();
  if (k == 0 || n % k != 0) throw ConfigError("block length must divide n");
  FitnessValue total = 0;
  for (std::size_t i = 0; i < n / k; ++i) total += inner.evaluate(x.slice(i * k, k));
  return total;
}

FitnessSpec FitnessSpec::onemax(std::size_t n) {
  if (n == 0) throw ConfigError("onemax needs n >= 1");
  auto node = std::make_shared<Node>();
  node->variant = Variant::OneMax;
  node->n = n;
  node->witness.optimum = BitString::ones(n);
  node->witness.optimum_value = n;
  return FitnessSpec(std::move(node));
}

FitnessSpec FitnessSpec::leading_ones(std::size_t n) {
  if (n == 0) throw ConfigError("leadingones needs n >= 1");
  auto node = std::make_shared<Node>();
  node->variant = Variant::LeadingOnes;
  node->n = n;
  node->witness.optimum = BitString::ones(n);
  node->witness.optimum_value = n;
  return FitnessSpec(std::move(node));
}

FitnessSpec FitnessSpec::fork(std::size_t n, std::size_t r) {
  if (r < 2) throw ConfigError("fork needs r >= 2");
  if (n < 2 * r) {
    throw ConfigError("fork needs n >= 2r (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  }
  auto node = std::make_shared<Node>();
  node->variant = Variant::Fork;
  node->n = n;
  node->r = r;
  node->witness.optimum = fork_optimum(n, r);
  node->witness.optimum_value = n + 2;
  node->witness.valley = fork_valley(n, r);
  node->witness.valley_value = n + 1;
  node->trap = true;
  return FitnessSpec(std::move(node));
}

FitnessSpec FitnessSpec::masked(BitString mask, const FitnessSpec& inner) {
  if (mask.size() != inner.n()) {
    throw ConfigError("mask length " + std::to_string(mask.size()) + " != n " +
                      std::to_string(inner.n()));
  }
  auto node = std::make_shared<Node>();
  node->variant = Variant::Masked;
  node->n = inner.n();
  node->r = inner.r();
  node->witness = inner.optimum();
  node->witness.optimum ^= mask;
  if (node->witness.valley) *node->witness.valley ^= mask;
  node->trap = inner.has_trap();
  node->mask = std::move(mask);
  node->inner = inner;
  return FitnessSpec(std::move(node));
}

FitnessSpec FitnessSpec::masked_fork(std::size_t n, std::size_t r) {
  const FitnessSpec base = fork(n, r);
  BitString mask(n);
  for (std::size_t i = n - r; i < n; ++i) mask.set(i, true);
  return masked(std::move(mask), base);
}

FitnessSpec FitnessSpec::lo_block(std::size_t n, std::size_t k, const FitnessSpec& inner) {
  check_block_inner(n, k, inner);
  auto node = std::make_shared<Node>();
  node->variant = Variant::LOBlock;
  node->n = n;
  node->k = k;
  node->r = inner.r();
  node->block_ones_value = inner.evaluate(BitString::ones(k));
  node->witness.optimum = BitString::ones(n);
  node->witness.optimum_value = node->block_ones_value * (n / k);
  node->inner = inner;
  return FitnessSpec(std::move(node));
}

FitnessSpec FitnessSpec::om_block(std::size_t n, std::size_t k, const FitnessSpec& inner) {
  check_block_inner(n, k, inner);
  auto node = std::make_shared<Node>();
  node->variant = Variant::OMBlock;
  node->n = n;
  node->k = k;
  node->r = inner.r();
  node->block_ones_value = inner.evaluate(BitString::ones(k));
  node->witness.optimum = BitString::ones(n);
  node->witness.optimum_value = node->block_ones_value * (n / k);
  node->inner = inner;
  return FitnessSpec(std::move(node));
}

const FitnessSpec& FitnessSpec::inner() const {
  if (!node_->inner) throw ConfigError(name() + " has no inner spec");
  return *node_->inner;
}

FitnessValue FitnessSpec::evaluate(const BitString& x) const {
  const Node& s = *node_;
  if (x.size() != s.n) {
    throw ConfigError("input length " + std::to_string(x.size()) + " != spec length " +
                      std::to_string(s.n));
  }
  switch (s.variant) {
    case Variant::OneMax:
      return x.popcount();
    case Variant::LeadingOnes:
      return x.leading_ones();
    case Variant::Fork: {
      const std::size_t ones = x.popcount();
      if (ones == s.n - s.r) {
        if (x == s.witness.optimum) return s.witness.optimum_value;
        if (x == *s.witness.valley) return s.witness.valley_value;
      }
      return ones;
    }
    case Variant::Masked:
      if (s.inner->variant() == Variant::Fork) {
        // |x XOR mask|_1 without materializing the XOR on the common path.
        const std::size_t ones = hamming_distance(x, s.mask);
        if (ones == s.n - s.r) {
          if (x == s.witness.optimum) return s.witness.optimum_value;
          if (x == *s.witness.valley) return s.witness.valley_value;
        }
        return ones;
      }
      return s.inner->evaluate(x ^ s.mask);
    case Variant::LOBlock: {
      const std::size_t full_blocks = x.leading_ones() / s.k;
      FitnessValue total = s.block_ones_value * full_blocks;
      if (full_blocks < s.n / s.k) total += s.inner->evaluate(x.slice(full_blocks * s.k, s.k));
      return total;
    }
    case Variant::OMBlock:
      return eval_om_block(x, s.k, *s.inner);
  }
  return 0;
}

std::string FitnessSpec::name() const {
  switch (node_->variant) {
    case Variant::OneMax:
      return "onemax";
    case Variant::LeadingOnes:
      return "leadingones";
    case Variant::Fork:
      return "fork";
    case Variant::Masked:
      return "masked(" + node_->inner->name() + ")";
    case Variant::LOBlock:
      return "lo_block(" + node_->inner->name() + ")";
    case Variant::OMBlock:
      return "om_block(" + node_->inner->name() + ")";
  }
  return "unknown";
}

}  // namespace islandevo
