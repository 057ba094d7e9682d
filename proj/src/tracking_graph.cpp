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
#include "mctrack/tracking_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <unordered_set>

#include "mctrack/error.hpp"

namespace mctrack {

TrackingGraph build_graph(const std::vector<Detection>& detections, int tau_max,
                          std::optional<double> score_min) {
  if (tau_max < 0) throw InvalidInput("build_graph: tau_max must be non-negative");

  TrackingGraph g;
  g.tau_max = tau_max;
  g.nodes.reserve(detections.size());
  std::unordered_set<int> seen;
  for (const Detection& d : detections) {
    if (d.w <= 0.0 || d.h <= 0.0 || d.frame < 1) {
      throw InvalidInput("build_graph: detection " + std::to_string(d.id) +
                         " has invalid geometry or frame");
    }
    if (!seen.insert(d.id).second) {
      throw InvalidInput("build_graph: duplicate detection id " + std::to_string(d.id));
    }
    if (score_min && d.score < *score_min) continue;
    g.nodes.push_back(d);
  }

  std::map<int, std::vector<int>> by_frame;
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
    by_frame[g.nodes[i].frame].push_back(i);
  }

  auto add = [&](int a, int b) {
    if (g.nodes[a].id > g.nodes[b].id) std::swap(a, b);
    g.edges.push_back({a, b, std::abs(g.nodes[a].frame - g.nodes[b].frame)});
  };
  for (auto it = by_frame.begin(); it != by_frame.end(); ++it) {
    const auto& here = it->second;
    for (std::size_t i = 0; i < here.size(); ++i)
      for (std::size_t j = i + 1; j < here.size(); ++j) add(here[i], here[j]);
    for (auto jt = std::next(it); jt != by_frame.end() && jt->first - it->first <= tau_max; ++jt) {
      for (int a : here)
        for (int b : jt->second) add(a, b);
    }
  }

  std::sort(g.edges.begin(), g.edges.end(), [&](const GraphEdge& l, const GraphEdge& r) {
    const int lu = g.nodes[l.u].id, lv = g.nodes[l.v].id;
    const int ru = g.nodes[r.u].id, rv = g.nodes[r.v].id;
    return lu != ru ? lu < ru : lv < rv;
  });
  return g;
}

}  // namespace mctrack
