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

#include <vector>

#include "mctrack/geometry.hpp"
#include "mctrack/multicut.hpp"
#include "mctrack/track.hpp"

namespace mctrack {

inline constexpr int kDefaultMinClusterSize = 5;

/// Marks members of clusters smaller than min_size as kDiscarded and
/// re-canonicalizes the survivors.
Partition filter_clusters(const Partition& partition, int min_size);

struct TrackOptions {
  bool interpolate = true;
  int max_gap = 10;  // longest run of empty frames that is filled in
};

/// One track per surviving cluster. Per frame the box is the unweighted mean
/// of the cluster's detections; labels index `detections`. Track ids are
/// cluster label + 1.
std::vector<Track> clusters_to_tracks(const Partition& partition,
                                      const std::vector<Detection>& detections,
                                      const TrackOptions& options = {});

}  // namespace mctrack
