// Copyright 2026 The mctrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <optional>
#include <vector>

#include "mctrack/geometry.hpp"

namespace mctrack {

inline constexpr int kDefaultTauMax = 10;

/// Undirected edge between two node indices of a TrackingGraph. u is the
/// endpoint with the smaller detection id.
struct GraphEdge {
  int u = 0;
  int v = 0;
  int dt = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Spatio-temporal graph over detections. Edges index into nodes and are
/// sorted by (min id, max id).
struct TrackingGraph {
  std::vector<Detection> nodes;
  std::vector<GraphEdge> edges;
  int tau_max = kDefaultTauMax;
};

/// Connects every pair of detections at most tau_max frames apart, including
/// pairs within one frame. Detections with score below score_min are dropped.
TrackingGraph build_graph(const std::vector<Detection>& detections, int tau_max,
                          std::optional<double> score_min = std::nullopt);

}  // namespace mctrack
