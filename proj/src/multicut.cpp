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
#include "mctrack/multicut.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <unordered_map>

#include "mctrack/error.hpp"
#include "mctrack/text.hpp"

namespace mctrack {

MulticutInstance::MulticutInstance(int num_nodes, std::vector<WeightedEdge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes < 0) throw InvalidInput("multicut instance: negative node count");
  for (WeightedEdge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes)
      throw InvalidInput("multicut instance: edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("multicut instance: self-edge at node " + std::to_string(e.u));
    if (!std::isfinite(e.cost)) throw InvalidInput("multicut instance: non-finite cost");
    if (e.u > e.v) std::swap(e.u, e.v);
  }

  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges_[a].u != edges_[b].u ? edges_[a].u < edges_[b].u : edges_[a].v < edges_[b].v;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& a = edges_[order[i - 1]];
    const auto& b = edges_[order[i]];
    if (a.u == b.u && a.v == b.v)
      throw InvalidInput("multicut instance: duplicate edge " + std::to_string(a.u) + "-" +
                         std::to_string(a.v));
  }

  offsets_.assign(num_nodes_ + 1, 0);
  for (const WeightedEdge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int v = 0; v < num_nodes_; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const WeightedEdge& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.cost};
    adjacency_[fill[e.v]++] = {e.u, e.cost};
  }
}

int Partition::num_clusters() const {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  return k;
}

Partition canonicalize(const std::vector<int>& labels) {
  std::unordered_map<int, int> remap;
  Partition out;
  out.labels.reserve(labels.size());
  for (int l : labels) {
    if (l < 0) {
      out.labels.push_back(kDiscarded);
      continue;
    }
    auto [it, inserted] = remap.try_emplace(l, static_cast<int>(remap.size()));
    out.labels.push_back(it->second);
  }
  return out;
}

Partition singletons(int num_nodes) {
  Partition p;
  p.labels.resize(num_nodes);
  std::iota(p.labels.begin(), p.labels.end(), 0);
  return p;
}

namespace {

void require_complete(const MulticutInstance& instance, const Partition& partition,
                      const char* who) {
  if (static_cast<int>(partition.labels.size()) != instance.num_nodes())
    throw InvalidInput(std::string(who) + ": partition size does not match instance");
  for (std::size_t v = 0; v < partition.labels.size(); ++v) {
    if (partition.labels[v] < 0)
      throw InvalidInput(std::string(who) + ": node " + std::to_string(v) + " is unlabeled");
  }
}

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

EdgeLabeling induced_labeling(const MulticutInstance& instance, const Partition& partition) {
  require_complete(instance, partition, "induced_labeling");
  EdgeLabeling x(instance.edges().size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const WeightedEdge& e = instance.edges()[i];
    x[i] = partition.labels[e.u] != partition.labels[e.v];
  }
  return x;
}

bool is_feasible(const MulticutInstance& instance, const EdgeLabeling& labeling) {
  if (labeling.size() != instance.edges().size())
    throw InvalidInput("is_feasible: labeling size does not match instance");
  std::vector<int> parent(instance.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  const auto& edges = instance.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (labeling[i] != 0) continue;
    const int a = find_root(parent, edges[i].u), b = find_root(parent, edges[i].v);
    if (a != b) parent[a] = b;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (labeling[i] != 0 && find_root(parent, edges[i].u) == find_root(parent, edges[i].v))
      return false;
  }
  return true;
}

double objective(const MulticutInstance& instance, const Partition& partition) {
  require_complete(instance, partition, "objective");
  double total = 0.0;
  for (const WeightedEdge& e : instance.edges()) {
    if (partition.labels[e.u] != partition.labels[e.v]) total += e.cost;
  }
  return total;
}

Partition brute_force(const MulticutInstance& instance) {
  const int n = instance.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw InvalidInput("brute_force: refusing " + std::to_string(n) + " nodes (limit " +
                       std::to_string(kBruteForceMaxNodes) + ")");
  }
  if (n == 0) return {};

  // Edges grouped by their larger endpoint, so assigning node i settles them.
  std::vector<std::vector<Neighbor>> earlier(n);
  for (const WeightedEdge& e : instance.edges()) earlier[e.v].push_back({e.u, e.cost});

  std::vector<int> labels(n, 0), best_labels(n, 0);
  double best = std::numeric_limits<double>::infinity();

  // Restricted growth strings in lexicographic order; only strictly better
  // objectives replace the incumbent, so ties keep the smallest labeling.
  std::function<void(int, int, double)> descend = [&](int i, int used, double cost) {
    if (i == n) {
      if (!std::isfinite(best) || cost < best - 1e-12 * (1.0 + std::abs(best))) {
        best = cost;
        best_labels = labels;
      }
      return;
    }
    for (int l = 0; l <= used; ++l) {
      labels[i] = l;
      double add = 0.0;
      for (const Neighbor& nb : earlier[i])
        if (labels[nb.node] != l) add += nb.cost;
      descend(i + 1, std::max(used, l + 1), cost + add);
    }
  };
  labels[0] = 0;
  descend(1, 1, 0.0);
  return Partition{best_labels};
}

Partition greedy_contract(const MulticutInstance& instance) {
  const int n = instance.num_nodes();
  std::vector<std::unordered_map<int, double>> adj(n);
  for (const WeightedEdge& e : instance.edges()) {
    adj[e.u][e.v] += e.cost;
    adj[e.v][e.u] += e.cost;
  }

  struct Candidate {
    double cost;
    int a, b;
  };
  // Largest cost first, then the smallest label pair.
  auto worse = [](const Candidate& l, const Candidate& r) {
    if (l.cost != r.cost) return l.cost < r.cost;
    return l.a != r.a ? l.a > r.a : l.b > r.b;
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> queue(worse);
  for (const WeightedEdge& e : instance.edges())
    if (e.cost > 0.0) queue.push({e.cost, e.u, e.v});

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> alive(n, 1);

  while (!queue.empty()) {
    const Candidate top = queue.top();
    queue.pop();
    if (!alive[top.a] || !alive[top.b]) continue;
    auto it = adj[top.a].find(top.b);
    if (it == adj[top.a].end() || it->second != top.cost) continue;

    const int keep = top.a, gone = top.b;
    adj[keep].erase(gone);
    for (const auto& [c, w] : adj[gone]) {
      if (c == keep) continue;
      adj[c].erase(gone);
      const double merged = (adj[keep][c] += w);
      adj[c][keep] = merged;
      if (merged > 0.0) queue.push({merged, std::min(keep, c), std::max(keep, c)});
    }
    adj[gone].clear();
    alive[gone] = 0;
    parent[gone] = keep;
  }

  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = find_root(parent, v);
  return canonicalize(labels);
}

namespace {

constexpr double kMinGain = 1e-9;

class KernighanLin {
 public:
  KernighanLin(const MulticutInstance& instance, const Partition& init)
      : g_(instance),
        label_(init.labels),
        gain_(instance.num_nodes(), 0.0),
        seen_(instance.num_nodes(), 0),
        moved_(instance.num_nodes(), 0),
        version_(instance.num_nodes(), 0) {
    for (int v = 0; v < g_.num_nodes(); ++v) {
      const int l = label_[v];
      if (l >= static_cast<int>(clusters_.size())) clusters_.resize(l + 1);
      clusters_[l].push_back(v);
    }
    modified_.assign(clusters_.size(), 1);
    split_checked_.assign(clusters_.size(), 0);
  }

  /// One pass over adjacent cluster pairs, then split attempts. Returns the
  /// total objective decrease.
  double pass() {
    double improvement = 0.0;
    for (const auto& [a, b] : adjacent_pairs()) {
      if (clusters_[a].empty() || clusters_[b].empty()) continue;
      const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
      auto it = pair_checked_.find(key);
      if (it != pair_checked_.end() && it->second >= std::max(modified_[a], modified_[b])) continue;
      pair_checked_[key] = clock_;
      improvement += update_bipartition(a, b);
    }

    const int existing = static_cast<int>(clusters_.size());
    for (int a = 0; a < existing; ++a) {
      while (!clusters_[a].empty() && split_checked_[a] < modified_[a]) {
        split_checked_[a] = clock_;
        clusters_.emplace_back();
        modified_.push_back(0);
        split_checked_.push_back(0);
        const int b = static_cast<int>(clusters_.size()) - 1;
        improvement += update_bipartition(a, b);
        if (clusters_[b].empty()) {
          clusters_.pop_back();
          modified_.pop_back();
          split_checked_.pop_back();
          break;
        }
      }
    }
    return improvement;
  }

  Partition result() const { return canonicalize(label_); }
  const std::vector<int>& labels() const { return label_; }

 private:
  struct Entry {
    double gain;
    int node;
    std::uint32_t version;
  };
  struct EntryLess {
    bool operator()(const Entry& l, const Entry& r) const {
      return l.gain != r.gain ? l.gain < r.gain : l.node > r.node;
    }
  };

  std::vector<std::pair<int, int>> adjacent_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    for (const WeightedEdge& e : g_.edges()) {
      const int a = label_[e.u], b = label_[e.v];
      if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
  }

  // Side of an unmoved node, 0 for A and 1 for B. Moved nodes are flipped.
  int side(int v) const { return (label_[v] == b_label_) ^ (moved_[v] == stamp_); }
  bool involved(int v) const { return label_[v] == a_label_ || label_[v] == b_label_; }

  double fresh_gain(int v) const {
    const int s = side(v);
    double gain = 0.0;
    for (const Neighbor& nb : g_.neighbors(v)) {
      if (!involved(nb.node)) continue;
      gain += side(nb.node) == s ? -nb.cost : nb.cost;
    }
    return gain;
  }

  void consider(int v) {
    seen_[v] = stamp_;
    gain_[v] = fresh_gain(v);
    heap_.push_back({gain_[v], v, ++version_[v]});
    std::push_heap(heap_.begin(), heap_.end(), EntryLess{});
  }

  double update_bipartition(int a, int b) {
    ++stamp_;
    a_label_ = a;
    b_label_ = b;
    heap_.clear();
    auto& A = clusters_[a];
    auto& B = clusters_[b];

    double merge_gain = 0.0;
    if (B.empty()) {
      for (int v : A) consider(v);
    } else {
      for (int v : B) {
        bool border = false;
        for (const Neighbor& nb : g_.neighbors(v)) {
          if (label_[nb.node] != a) continue;
          border = true;
          merge_gain += nb.cost;
          if (seen_[nb.node] != stamp_) consider(nb.node);
        }
        if (border) consider(v);
      }
    }

    sequence_.clear();
    double cumulative = 0.0, best = 0.0;
    std::size_t best_length = 0;
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), EntryLess{});
      const Entry top = heap_.back();
      heap_.pop_back();
      if (moved_[top.node] == stamp_ || top.version != version_[top.node]) continue;

      const int v = top.node;
      const int from = side(v);
      moved_[v] = stamp_;
      sequence_.push_back(v);
      cumulative += top.gain;
      if (cumulative > best + kMinGain) {
        best = cumulative;
        best_length = sequence_.size();
      }

      for (const Neighbor& nb : g_.neighbors(v)) {
        const int u = nb.node;
        if (!involved(u) || moved_[u] == stamp_) continue;
        if (seen_[u] != stamp_) {
          consider(u);
          continue;
        }
        gain_[u] += side(u) == from ? 2.0 * nb.cost : -2.0 * nb.cost;
        heap_.push_back({gain_[u], u, ++version_[u]});
        std::push_heap(heap_.begin(), heap_.end(), EntryLess{});
      }
    }

    if (merge_gain > best && merge_gain > kMinGain) {
      for (int v : B) label_[v] = a;
      A.insert(A.end(), B.begin(), B.end());
      B.clear();
      touch(a, b);
      return merge_gain;
    }
    if (best_length == 0) return 0.0;

    for (std::size_t i = 0; i < best_length; ++i) {
      const int v = sequence_[i];
      label_[v] = label_[v] == a ? b : a;
    }
    auto keep = [&](std::vector<int>& members, int l) {
      members.erase(std::remove_if(members.begin(), members.end(),
                                   [&](int v) { return label_[v] != l; }),
                    members.end());
    };
    keep(A, a);
    keep(B, b);
    for (std::size_t i = 0; i < best_length; ++i) {
      const int v = sequence_[i];
      (label_[v] == a ? A : B).push_back(v);
    }
    std::sort(A.begin(), A.end());
    std::sort(B.begin(), B.end());
    touch(a, b);
    return best;
  }

  void touch(int a, int b) {
    ++clock_;
    modified_[a] = clock_;
    modified_[b] = clock_;
  }

  const MulticutInstance& g_;
  std::vector<int> label_;
  std::vector<std::vector<int>> clusters_;

  std::vector<double> gain_;
  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> moved_;
  std::vector<std::uint32_t> version_;
  std::vector<Entry> heap_;
  std::vector<int> sequence_;
  std::uint32_t stamp_ = 0;
  int a_label_ = -1;
  int b_label_ = -1;

  // Change tracking: a pair or split is re-examined only after one of its
  // clusters changed since the last examination.
  std::uint64_t clock_ = 1;
  std::vector<std::uint64_t> modified_;
  std::vector<std::uint64_t> split_checked_;
  std::unordered_map<std::uint64_t, std::uint64_t> pair_checked_;
};

}  // namespace

KljResult klj_solve(const MulticutInstance& instance, const Partition& init, int max_passes) {
  if (max_passes < 1) throw InvalidInput("klj_solve: max_passes must be at least 1");
  require_complete(instance, init, "klj_solve");

  KernighanLin kl(instance, canonicalize(init.labels));
  KljResult result;
  result.objective_trace.push_back(objective(instance, init));
  while (result.passes < max_passes) {
    ++result.passes;
    const double improvement = kl.pass();
    result.objective_trace.push_back(objective(instance, Partition{kl.labels()}));
    if (improvement <= 0.0) break;
  }
  result.partition = kl.result();
  return result;
}

void write_instance(std::ostream& out, const MulticutInstance& instance) {
  out << instance.num_nodes() << '\n';
  for (const WeightedEdge& e : instance.edges())
    out << e.u << ' ' << e.v << ' ' << format_double(e.cost) << '\n';
}

MulticutInstance read_instance(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<WeightedEdge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line, ' ');
    if (fields.empty()) continue;
    if (n < 0) {
      auto count = parse_int(fields[0]);
      if (fields.size() != 1 || !count || *count < 0) throw ParseError(source, line_no, "expected node count");
      n = static_cast<int>(*count);
      continue;
    }
    if (fields.size() != 3) throw ParseError(source, line_no, "expected 'u v c'");
    auto u = parse_int(fields[0]), v = parse_int(fields[1]);
    auto c = parse_double(fields[2]);
    if (!u || !v || !c) throw ParseError(source, line_no, "malformed edge");
    edges.push_back({static_cast<int>(*u), static_cast<int>(*v), *c});
  }
  if (n < 0) throw ParseError(source, line_no, "missing node count");
  return MulticutInstance(n, std::move(edges));
}

}  // namespace mctrack
