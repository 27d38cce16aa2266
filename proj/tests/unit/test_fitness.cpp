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

#include "islandevo/error.hpp"
#include "islandevo/fitness.hpp"
#include "islandevo/rng.hpp"

using islandevo::BitString;
using islandevo::FitnessSpec;

namespace {
BitString bs(const char* text) { return BitString::from_string(text); }
}  // namespace

TEST_CASE("onemax and leadingones examples") {
  CHECK(islandevo::eval_onemax(bs("000000")) == 0);
  CHECK(islandevo::eval_onemax(bs("111111")) == 6);
  CHECK(islandevo::eval_onemax(bs("110101")) == 4);
  CHECK(islandevo::eval_leadingones(bs("11011")) == 2);
  CHECK(islandevo::eval_leadingones(bs("01111")) == 0);
  CHECK(islandevo::eval_leadingones(bs("11111")) == 5);
}

TEST_CASE("fork examples") {
  CHECK(islandevo::eval_fork(bs("001111"), 2) == 7);
  CHECK(islandevo::eval_fork(bs("111100"), 2) == 8);
  CHECK(islandevo::eval_fork(bs("110101"), 2) == 4);
  CHECK(islandevo::eval_fork(bs("111111"), 2) == 6);
}

TEST_CASE("fork rejects bad parameters") {
  CHECK_THROWS_AS(FitnessSpec::fork(3, 2), islandevo::ConfigError);
  CHECK_THROWS_AS(FitnessSpec::fork(6, 1), islandevo::ConfigError);
  CHECK_NOTHROW(FitnessSpec::fork(4, 2));
}

TEST_CASE("masked fork examples") {
  const FitnessSpec f = FitnessSpec::masked(bs("000011"), FitnessSpec::fork(6, 2));
  CHECK(f(bs("111111")) == 8);
  CHECK(f(bs("001100")) == 7);
  CHECK(f(bs("000000")) == 2);
  CHECK(f.optimum().optimum == BitString::ones(6));
  CHECK(*f.optimum().valley == bs("001100"));
  CHECK(FitnessSpec::masked_fork(6, 2)(bs("001100")) == 7);
  CHECK_THROWS_AS(FitnessSpec::masked(bs("00011"), FitnessSpec::fork(6, 2)), islandevo::ConfigError);
}

TEST_CASE("block composition examples") {
  const FitnessSpec om2 = FitnessSpec::onemax(2);
  const FitnessSpec lo = FitnessSpec::lo_block(4, 2, om2);
  const FitnessSpec om = FitnessSpec::om_block(4, 2, om2);
  CHECK(lo(bs("1101")) == 3);
  CHECK(lo(bs("0111")) == 1);
  CHECK(lo(bs("1111")) == 4);
  CHECK(om(bs("0111")) == 3);
  CHECK(om(bs("0000")) == 0);
  CHECK(om(bs("1111")) == 4);
  CHECK_THROWS_AS(FitnessSpec::lo_block(5, 2, om2), islandevo::ConfigError);
  CHECK_THROWS_AS(FitnessSpec::om_block(6, 4, FitnessSpec::onemax(4)), islandevo::ConfigError);
  // Inner optimum must be 1^k.
  CHECK_THROWS_AS(FitnessSpec::lo_block(12, 6, FitnessSpec::fork(6, 2)), islandevo::ConfigError);
}

TEST_CASE("optimum witnesses") {
  const FitnessSpec fork_spec = FitnessSpec::fork(6, 2);
  const auto& fork = fork_spec.optimum();
  CHECK(fork.optimum == bs("111100"));
  CHECK(fork.optimum_value == 8);
  CHECK(*fork.valley == bs("001111"));
  CHECK(fork.valley_value == 7);

  const FitnessSpec block = FitnessSpec::lo_block(12, 6, FitnessSpec::masked_fork(6, 2));
  CHECK(block.optimum().optimum == BitString::ones(12));
  CHECK(block.optimum().optimum_value == 16);
  CHECK(block(BitString::ones(12)) == 16);
  CHECK(block.name() == "lo_block(masked(fork))");

  const FitnessSpec om_spec = FitnessSpec::onemax(3);
  const auto& om = islandevo::optimum_of(om_spec);
  CHECK(om.optimum == bs("111"));
  CHECK(om.optimum_value == 3);
  CHECK_FALSE(om.valley.has_value());
}

TEST_CASE("fork exhaustive value set, uniqueness and reversal symmetry") {
  for (std::size_t n = 4; n <= 16; ++n) {
    for (std::size_t r = 2; 2 * r <= n; ++r) {
      const FitnessSpec f = FitnessSpec::fork(n, r);
      const auto& w = f.optimum();
      std::size_t optima = 0;
      std::size_t valleys = 0;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const BitString x = BitString::from_index(code, n);
        const auto v = f(x);
        if (v == n + 2) {
          ++optima;
          REQUIRE(x == w.optimum);
        } else if (v == n + 1) {
          ++valleys;
          REQUIRE(x == *w.valley);
          REQUIRE(f(x.reversed()) == n + 2);
        } else {
          REQUIRE(v == x.popcount());
          REQUIRE(f(x.reversed()) == v);
        }
      }
      CHECK(optima == 1);
      CHECK(valleys == 1);
      CHECK(f.has_trap());
    }
  }
}

TEST_CASE("masking twice is the identity") {
  const FitnessSpec fork = FitnessSpec::fork(8, 3);
  const BitString mask = bs("01100101");
  const FitnessSpec masked = FitnessSpec::masked(mask, fork);
  for (std::uint64_t code = 0; code < 256; ++code) {
    const BitString x = BitString::from_index(code, 8);
    CHECK(masked(x ^ mask) == fork(x));
    CHECK(islandevo::eval_masked(x, mask, fork) == fork(x ^ mask));
  }
}

TEST_CASE("lo_block is dominated by om_block and peaks only at 1^n") {
  struct Case {
    std::size_t n, k;
    FitnessSpec inner;
  };
  const Case cases[] = {{12, 6, FitnessSpec::masked_fork(6, 2)},
                        {16, 8, FitnessSpec::masked_fork(8, 3)},
                        {16, 4, FitnessSpec::onemax(4)},
                        {12, 3, FitnessSpec::leading_ones(3)}};
  for (const auto& c : cases) {
    const FitnessSpec lo = FitnessSpec::lo_block(c.n, c.k, c.inner);
    const FitnessSpec om = FitnessSpec::om_block(c.n, c.k, c.inner);
    std::size_t maximizers = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << c.n); ++code) {
      const BitString x = BitString::from_index(code, c.n);
      const auto v = lo(x);
      REQUIRE(v <= om(x));
      REQUIRE(v == islandevo::eval_lo_block(x, c.k, c.inner));
      REQUIRE(om(x) == islandevo::eval_om_block(x, c.k, c.inner));
      if (v == lo.optimum().optimum_value) {
        ++maximizers;
        REQUIRE(x.all_ones());
      }
    }
    CHECK(maximizers == 1);
  }
}

TEST_CASE("fast paths agree with the generic definition on long strings") {
  islandevo::RngStream rng(11);
  const FitnessSpec masked = FitnessSpec::masked_fork(200, 3);
  const FitnessSpec fork = FitnessSpec::fork(200, 3);
  for (int rep = 0; rep < 200; ++rep) {
    BitString x = BitString::random(200, rng);
    if (rep == 0) x = masked.optimum().optimum;
    if (rep == 1) x = *masked.optimum().valley;
    CHECK(masked(x) == fork(x ^ masked.mask()));
  }
}
