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

#include "islandevo/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include "islandevo/error.hpp"

namespace islandevo {

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Complete:
      return "complete";
    case TopologyKind::Ring:
      return "ring";
    case TopologyKind::Isolated:
      return "isolated";
  }
  return "unknown";
}

TopologyKind parse_topology_kind(std::string_view token) {
  if (token == "complete") return TopologyKind::Complete;
  if (token == "ring") return TopologyKind::Ring;
  if (token == "isolated") return TopologyKind::Isolated;
  throw ConfigError("unknown topology '" + std::string(token) +
                    "' (expected ring, complete or isolated)");
}

Topology::Topology(TopologyKind kind, std::size_t lambda)
    : kind_(kind), lambda_(lambda), adjacency_(lambda) {
  if (lambda == 0) throw ConfigError("topology needs at least one island");
  if (kind == TopologyKind::Ring && lambda < 3) {
    throw ConfigError("ring topology needs lambda >= 3; use complete or isolated for fewer islands");
  }
  for (std::size_t j = 0; j < lambda; ++j) {
    auto& adj = adjacency_[j];
    switch (kind) {
      case TopologyKind::Complete:
        for (std::size_t i = 0; i < lambda; ++i) {
          if (i != j) adj.push_back(i);
        }
        break;
      case TopologyKind::Ring:
        adj = {(j + lambda - 1) % lambda, (j + 1) % lambda};
        std::sort(adj.begin(), adj.end());
        break;
      case TopologyKind::Isolated:
        break;
    }
  }
}

const std::vector<std::size_t>& Topology::neighbors(std::size_t j) const {
  if (j >= lambda_) {
    throw std::out_of_range("island index " + std::to_string(j) + " out of range for lambda " +
                            std::to_string(lambda_));
  }
  return adjacency_[j];
}

std::size_t Topology::degree() const { return adjacency_.front().size(); }

std::size_t Topology::diameter() const {
  switch (kind_) {
    case TopologyKind::Complete:
      return lambda_ == 1 ? 0 : 1;
    case TopologyKind::Ring:
      return lambda_ / 2;
    case TopologyKind::Isolated:
      break;
  }
  throw ConfigError("isolated topology is disconnected; diameter undefined");
}

}  // namespace islandevo
