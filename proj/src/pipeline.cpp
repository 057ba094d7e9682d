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
#include "mctrack/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "mctrack/error.hpp"
#include "mctrack/io.hpp"
#include "mctrack/track_builder.hpp"

namespace mctrack {

namespace fs = std::filesystem;

CostedGraph build_costed_graph(const SequenceBundle& bundle, const PairModel& model,
                               const PipelineConfig& config) {
  if (model.scheme != config.scheme)
    throw InvalidInput(std::string("model scheme '") + scheme_name(model.scheme) +
                       "' does not match configured scheme '" + scheme_name(config.scheme) + "'");
  if (model.tau_max < config.tau_max)
    throw InvalidInput("model covers frame gaps up to " + std::to_string(model.tau_max) +
                       " but tau_max is " + std::to_string(config.tau_max));

  CostedGraph out;
  out.graph = build_graph(bundle.detections, config.tau_max, config.score_min);
  std::vector<WeightedEdge> edges;
  edges.reserve(out.graph.edges.size());
  for (const GraphEdge& e : out.graph.edges) {
    const Detection& v = out.graph.nodes[e.u];
    const Detection& w = out.graph.nodes[e.v];
    const FeatureVector f = edge_features(config.scheme, v, w, bundle.matches);
    edges.push_back({e.u, e.v, edge_cost(model, f, e.dt)});
  }
  out.instance = MulticutInstance(static_cast<int>(out.graph.nodes.size()), std::move(edges));
  return out;
}

TrackingResult run_tracking(const SequenceBundle& bundle, const PairModel& model,
                            const PipelineConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const CostedGraph costed = build_costed_graph(bundle, model, config);
  const auto solve_start = Clock::now();
  const Partition init = config.init == InitMode::kGreedy
                             ? greedy_contract(costed.instance)
                             : singletons(costed.instance.num_nodes());
  const KljResult solved = klj_solve(costed.instance, init, config.max_passes);
  const auto solve_end = Clock::now();

  const Partition kept = filter_clusters(solved.partition, config.min_cluster_size);
  TrackOptions options;
  options.interpolate = config.interpolate;
  options.max_gap = config.tau_max;

  TrackingResult result;
  result.tracks = clusters_to_tracks(kept, costed.graph.nodes, options);

  Diagnostics& d = result.diagnostics;
  d.nodes = costed.graph.nodes.size();
  d.edges = costed.graph.edges.size();
  d.passes = solved.passes;
  d.objective = solved.objective_trace.back();
  d.clusters = solved.partition.num_clusters();
  d.tracks = static_cast<int>(result.tracks.size());
  d.solver_seconds = std::chrono::duration<double>(solve_end - solve_start).count();
  d.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

std::vector<LabeledPair> harvest_bundles(const std::vector<SequenceBundle>& bundles,
                                         const PipelineConfig& config) {
  std::vector<LabeledPair> pairs;
  for (const SequenceBundle& b : bundles) {
    if (b.gt.empty()) continue;
    auto more = harvest_pairs(b.detections, b.gt, config.tau_max, config.iou_assign,
                              config.scheme, b.matches);
    pairs.insert(pairs.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
  }
  if (pairs.empty()) throw InvalidInput("no supervision: no sequence carries ground truth");
  return pairs;
}

PairModel train_from_bundles(const std::vector<SequenceBundle>& bundles,
                             const PipelineConfig& config, const TrainConfig& train_config) {
  return train_pair_model(harvest_bundles(bundles, config), config.scheme, config.tau_max,
                          train_config);
}

SequenceBundle load_sequence(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw InvalidInput("sequence directory '" + dir + "' does not exist");
  SequenceBundle b;
  b.detections = load_detections((root / "det.txt").string());
  if (fs::exists(root / "matches.txt")) b.matches = load_matches((root / "matches.txt").string());
  if (fs::exists(root / "gt.txt")) b.gt = load_gt((root / "gt.txt").string());
  if (fs::exists(root / "seqinfo.ini")) {
    b.info = load_sequence_info((root / "seqinfo.ini").string());
  } else {
    for (const Detection& d : b.detections) b.info.frames = std::max(b.info.frames, d.frame);
  }
  for (const Detection& d : b.detections) {
    if (b.info.frames > 0 && d.frame > b.info.frames)
      throw InvalidInput("detection frame " + std::to_string(d.frame) + " exceeds sequence length");
  }
  return b;
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void save_sequence(const std::string& dir, const SequenceBundle& bundle) {
  const fs::path root(dir);
  fs::create_directories(root);
  auto det = open_output(root / "det.txt");
  write_detections(det, bundle.detections);
  auto matches = open_output(root / "matches.txt");
  write_matches(matches, bundle.matches);
  if (!bundle.gt.empty()) {
    auto gt = open_output(root / "gt.txt");
    write_gt(gt, bundle.gt);
  }
  auto info = open_output(root / "seqinfo.ini");
  write_sequence_info(info, bundle.info);
}

const char* init_name(InitMode mode) { return mode == InitMode::kGreedy ? "gaec" : "singleton"; }

InitMode parse_init(const std::string& name) {
  if (name == "gaec") return InitMode::kGreedy;
  if (name == "singleton") return InitMode::kSingletons;
  throw InvalidInput("unknown init mode '" + name + "'");
}

}  // namespace mctrack
