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
#include <stdexcept>

#include "islandevo/error.hpp"
#include "islandevo/topology.hpp"

using islandevo::Topology;
using V = std::vector<std::size_t>;

TEST_CASE("neighbour lists") {
  CHECK(Topology::ring(5).neighbors(0) == V{1, 4});
  CHECK(Topology::ring(5).neighbors(2) == V{1, 3});
  CHECK(Topology::complete(4).neighbors(2) == V{0, 1, 3});
  CHECK(Topology::isolated(3).neighbors(1).empty());
  CHECK(Topology::complete(1).neighbors(0).empty());
  CHECK_THROWS_AS(Topology::ring(5).neighbors(5), std::out_of_range);
}

TEST_CASE("degrees and diameters") {
  CHECK(Topology::ring(7).degree() == 2);
  CHECK(Topology::complete(7).degree() == 6);
  CHECK(Topology::isolated(7).degree() == 0);
  CHECK(Topology::ring(7).diameter() == 3);
  CHECK(Topology::ring(8).diameter() == 4);
  CHECK(Topology::complete(7).diameter() == 1);
  CHECK(Topology::complete(1).diameter() == 0);
  CHECK_THROWS_AS(Topology::isolated(3).diameter(), islandevo::ConfigError);
}

TEST_CASE("ring adjacency is symmetric and simple") {
  for (std::size_t lambda = 3; lambda <= 20; ++lambda) {
    const Topology t = Topology::ring(lambda);
    for (std::size_t j = 0; j < lambda; ++j) {
      REQUIRE(t.neighbors(j).size() == 2);
      for (std::size_t i : t.neighbors(j)) {
        REQUIRE(i != j);
        const auto& back = t.neighbors(i);
        REQUIRE(std::find(back.begin(), back.end(), j) != back.end());
      }
    }
  }
}

TEST_CASE("invalid sizes and names") {
  CHECK_THROWS_AS(Topology::ring(2), islandevo::ConfigError);
  CHECK_THROWS_AS(Topology::complete(0), islandevo::ConfigError);
  CHECK(islandevo::parse_topology_kind("ring") == islandevo::TopologyKind::Ring);
  CHECK(islandevo::to_string(islandevo::TopologyKind::Complete) == "complete");
  CHECK_THROWS_AS(islandevo::parse_topology_kind("torus"), islandevo::ConfigError);
}
