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
#include "mctrack/track_builder.hpp"

#include <array>
#include <map>

#include "mctrack/error.hpp"

namespace mctrack {

Partition filter_clusters(const Partition& partition, int min_size) {
  if (min_size < 1) throw InvalidInput("filter_clusters: min_size must be at least 1");
  std::map<int, int> size;
  for (int l : partition.labels)
    if (l >= 0) ++size[l];
  std::vector<int> labels = partition.labels;
  for (int& l : labels)
    if (l >= 0 && size[l] < min_size) l = kDiscarded;
  return canonicalize(labels);
}

std::vector<Track> clusters_to_tracks(const Partition& partition,
                                      const std::vector<Detection>& detections,
                                      const TrackOptions& options) {
  if (partition.labels.size() != detections.size())
    throw InvalidInput("clusters_to_tracks: partition does not match detections");

  // (x, y, w, h) sums and counts per cluster and frame.
  std::map<int, std::map<int, std::pair<std::array<double, 4>, int>>> sums;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const int l = partition.labels[i];
    if (l < 0) continue;
    const Detection& d = detections[i];
    auto& [acc, count] = sums[l][d.frame];
    acc[0] += d.x;
    acc[1] += d.y;
    acc[2] += d.w;
    acc[3] += d.h;
    ++count;
  }

  std::vector<Track> tracks;
  for (const auto& [label, frames] : sums) {
    Track t;
    t.id = label + 1;
    std::map<int, std::array<double, 4>> centers;
    for (const auto& [frame, entry] : frames) {
      const auto& [acc, count] = entry;
      centers[frame] = {acc[0] / count, acc[1] / count, acc[2] / count, acc[3] / count};
    }
    if (options.interpolate) {
      std::map<int, std::array<double, 4>> filled;
      for (auto it = centers.begin(); it != centers.end(); ++it) {
        auto next = std::next(it);
        if (next == centers.end()) break;
        const int gap = next->first - it->first - 1;
        if (gap < 1 || gap > options.max_gap) continue;
        for (int f = it->first + 1; f < next->first; ++f) {
          const double s = static_cast<double>(f - it->first) / (next->first - it->first);
          std::array<double, 4> c{};
          for (int k = 0; k < 4; ++k) c[k] = it->second[k] + s * (next->second[k] - it->second[k]);
          filled[f] = c;
        }
      }
      centers.merge(filled);
    }
    for (const auto& [frame, c] : centers) {
      t.boxes[frame] = {c[0] - c[2] / 2.0, c[1] - c[3] / 2.0, c[2], c[3]};
    }
    tracks.push_back(std::move(t));
  }
  return tracks;
}

}  // namespace mctrack
