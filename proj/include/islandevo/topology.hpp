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
#include <string>
#include <string_view>
#include <vector>

namespace islandevo {

enum class TopologyKind { Complete, Ring, Isolated };

std::string_view to_string(TopologyKind kind);
// Accepts "complete", "ring", "isolated".
TopologyKind parse_topology_kind(std::string_view token);

// Undirected simple migration graph on lambda islands. Immutable.
class Topology {
 public:
  // Ring requires lambda >= 3; every kind requires lambda >= 1.
  Topology(TopologyKind kind, std::size_t lambda);

  static Topology complete(std::size_t lambda) { return {TopologyKind::Complete, lambda}; }
  static Topology ring(std::size_t lambda) { return {TopologyKind::Ring, lambda}; }
  static Topology isolated(std::size_t lambda) { return {TopologyKind::Isolated, lambda}; }

  TopologyKind kind() const { return kind_; }
  std::size_t lambda() const { return lambda_; }

  // Ascending island indices adjacent to j. Throws std::out_of_range.
  const std::vector<std::size_t>& neighbors(std::size_t j) const;
  std::size_t degree() const;

  // Complete -> 1, Ring -> floor(lambda/2). Isolated is disconnected and
  // throws ConfigError.
  std::size_t diameter() const;

 private:
  TopologyKind kind_;
  std::size_t lambda_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace islandevo
