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
#include <optional>
#include <string>
#include <vector>

#include "mctrack/cost_model.hpp"
#include "mctrack/multicut.hpp"
#include "mctrack/synth.hpp"
#include "mctrack/track.hpp"
#include "mctrack/tracking_graph.hpp"

namespace mctrack {

enum class InitMode { kGreedy, kSingletons };

struct PipelineConfig {
  int tau_max = kDefaultTauMax;
  int min_cluster_size = 5;
  std::optional<double> score_min;
  FeatureScheme scheme = FeatureScheme::kDM5;
  InitMode init = InitMode::kGreedy;
  bool interpolate = true;
  double iou_assign = 0.5;
  double iou_eval = 0.5;
  int max_passes = 100;
  std::uint64_t seed = 0;
};

struct Diagnostics {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int passes = 0;
  double seconds = 0.0;         // wall time of the whole tracking run
  double solver_seconds = 0.0;  // initialization plus local search
  double objective = 0.0;
  int clusters = 0;
  int tracks = 0;
};

struct TrackingResult {
  std::vector<Track> tracks;
  Diagnostics diagnostics;
};

/// Graph, costs and solver input for one sequence.
struct CostedGraph {
  TrackingGraph graph;
  MulticutInstance instance;
};

CostedGraph build_costed_graph(const SequenceBundle& bundle, const PairModel& model,
                               const PipelineConfig& config);

/// build_graph -> features -> costs -> multicut -> cluster filter -> tracks.
TrackingResult run_tracking(const SequenceBundle& bundle, const PairModel& model,
                            const PipelineConfig& config);

/// Labeled pairs pooled over sequences that carry ground truth.
std::vector<LabeledPair> harvest_bundles(const std::vector<SequenceBundle>& bundles,
                                         const PipelineConfig& config);

PairModel train_from_bundles(const std::vector<SequenceBundle>& bundles,
                             const PipelineConfig& config, const TrainConfig& train_config = {});

/// Reads det.txt, matches.txt and, when present, gt.txt and seqinfo.ini.
SequenceBundle load_sequence(const std::string& dir);
void save_sequence(const std::string& dir, const SequenceBundle& bundle);

const char* init_name(InitMode mode);
InitMode parse_init(const std::string& name);

}  // namespace mctrack
