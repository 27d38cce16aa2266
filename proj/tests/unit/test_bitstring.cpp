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

#include "islandevo/bitstring.hpp"
#include "islandevo/error.hpp"
#include "islandevo/rng.hpp"

using islandevo::BitString;

TEST_CASE("text round trip keeps x_0 first") {
  const BitString x = BitString::from_string("1101");
  CHECK(x.size() == 4);
  CHECK(x[0]);
  CHECK(x[1]);
  CHECK_FALSE(x[2]);
  CHECK(x[3]);
  CHECK(x.to_string() == "1101");
  CHECK(x.to_index() == 0b1011);
  CHECK(BitString::from_index(0b1011, 4) == x);
}

TEST_CASE("bad characters are rejected") {
  CHECK_THROWS_AS(BitString::from_string("10a1"), islandevo::ConfigError);
}

TEST_CASE("counts across word boundaries") {
  for (std::size_t n : {1, 63, 64, 65, 128, 130, 700}) {
    BitString x = BitString::ones(n);
    CHECK(x.popcount() == n);
    CHECK(x.leading_ones() == n);
    CHECK(x.all_ones());
    x.flip(n - 1);
    CHECK(x.popcount() == n - 1);
    CHECK(x.leading_ones() == n - 1);
    CHECK_FALSE(x.all_ones());
    x.set(0, false);
    CHECK(x.leading_ones() == 0);
  }
  BitString z = BitString::zeros(200);
  CHECK(z.popcount() == 0);
  z.set(64, true);
  CHECK(z.popcount() == 1);
  CHECK(z.words()[1] == 1U);
}

TEST_CASE("ones keeps padding clear") {
  const BitString x = BitString::ones(70);
  CHECK(x.words().size() == 2);
  CHECK(x.words()[1] == 0x3FU);
}

TEST_CASE("reverse, slice and xor") {
  const BitString x = BitString::from_string("110100");
  CHECK(x.reversed().to_string() == "001011");
  CHECK(x.slice(1, 3).to_string() == "101");
  CHECK((x ^ BitString::from_string("111111")).to_string() == "001011");
}

TEST_CASE("hamming distance matches a direct count") {
  islandevo::RngStream rng(7);
  for (std::size_t n : {5, 64, 300, 1024}) {
    const BitString a = BitString::random(n, rng);
    const BitString b = BitString::random(n, rng);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i) expected += a[i] != b[i];
    CHECK(islandevo::hamming_distance(a, b) == expected);
    CHECK(islandevo::hamming_distance(a, a) == 0);
  }
}

TEST_CASE("random strings are balanced") {
  islandevo::RngStream rng(3);
  std::size_t ones = 0;
  for (int rep = 0; rep < 200; ++rep) ones += BitString::random(100, rng).popcount();
  // 20000 fair bits: sd ~ 70.
  CHECK(ones > 10000 - 400);
  CHECK(ones < 10000 + 400);
}
