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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mctrack {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double cost = 0.0;
};

struct Neighbor {
  int node = 0;
  double cost = 0.0;
};

/// Signed-cost graph of a minimum cost multicut problem. A positive cost is
/// paid when the edge is cut; a negative cost is a reward for cutting.
class MulticutInstance {
 public:
  MulticutInstance() = default;

  /// Throws InvalidInput on self-edges, duplicates, out-of-range endpoints or
  /// non-finite costs. Endpoints are normalized to u < v.
  MulticutInstance(int num_nodes, std::vector<WeightedEdge> edges);

  int num_nodes() const { return num_nodes_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(int v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

 private:
  int num_nodes_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

inline constexpr int kDiscarded = -1;

/// Node-to-cluster labeling. Solver outputs are canonical: labels 0..k-1 in
/// order of first appearance. Filtered partitions may mark nodes kDiscarded.
struct Partition {
  std::vector<int> labels;

  int num_clusters() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Relabels by first appearance; kDiscarded entries stay discarded.
Partition canonicalize(const std::vector<int>& labels);

/// One bit per instance edge: 1 = cut.
using EdgeLabeling = std::vector<std::uint8_t>;

EdgeLabeling induced_labeling(const MulticutInstance& instance, const Partition& partition);

/// True iff no cycle carries exactly one cut edge.
bool is_feasible(const MulticutInstance& instance, const EdgeLabeling& labeling);

/// Sum of the costs of cut edges.
double objective(const MulticutInstance& instance, const Partition& partition);

inline constexpr int kBruteForceMaxNodes = 12;

/// Exact optimum by enumeration of all set partitions (at most 12 nodes).
/// Among optimal partitions the lexicographically smallest labeling wins.
Partition brute_force(const MulticutInstance& instance);

/// Greedy additive edge contraction: merge the cluster pair with the largest
/// positive connecting cost until no positive pair remains.
Partition greedy_contract(const MulticutInstance& instance);

struct KljResult {
  Partition partition;
  int passes = 0;
  std::vector<double> objective_trace;  // after init, then after every pass
};

/// Kernighan-Lin local search with joins.
KljResult klj_solve(const MulticutInstance& instance, const Partition& init, int max_passes = 100);

Partition singletons(int num_nodes);

void write_instance(std::ostream& out, const MulticutInstance& instance);
MulticutInstance read_instance(std::istream& in, const std::string& source = "<instance>");

}  // namespace mctrack
