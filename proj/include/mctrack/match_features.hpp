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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mctrack/geometry.hpp"
#include "mctrack/track.hpp"

namespace mctrack {

/// A single point correspondence from frame `from` to a later frame `to`.
struct PointMatch {
  int id = 0;
  int from = 0;
  int to = 0;
  double px = 0.0, py = 0.0;  // point in frame `from`
  double qx = 0.0, qy = 0.0;  // point in frame `to`

  friend bool operator==(const PointMatch&, const PointMatch&) = default;
};

using FramePair = std::pair<int, int>;

/// Point matches grouped by ordered frame pair. Ids are assigned per pair in
/// insertion order.
class CorrespondenceSet {
 public:
  /// Throws InvalidInput unless from < to.
  void add(int from, int to, double px, double py, double qx, double qy);

  const std::vector<PointMatch>& matches(int from, int to) const;
  const std::map<FramePair, std::vector<PointMatch>>& pairs() const { return pairs_; }
  std::size_t size() const;
  bool empty() const { return pairs_.empty(); }

  friend bool operator==(const CorrespondenceSet&, const CorrespondenceSet&) = default;

 private:
  std::map<FramePair, std::vector<PointMatch>> pairs_;
};

enum class FeatureScheme { kDM5, kST6 };

const char* scheme_name(FeatureScheme s);
FeatureScheme parse_scheme(const std::string& name);
inline int feature_dim(FeatureScheme s) { return s == FeatureScheme::kDM5 ? 5 : 6; }

struct FeatureVector {
  FeatureScheme scheme = FeatureScheme::kST6;
  Eigen::VectorXd values;
};

struct MatchCounts {
  int intersection = 0;
  int union_size = 0;
  bool has_correspondence = false;
};

/// Counts matches whose earlier endpoint lies in the earlier box (M_v) and
/// whose later endpoint lies in the later box (M_w). Same-frame pairs carry
/// no correspondence and yield zero counts.
MatchCounts match_sets(const Detection& v, const Detection& w, const CorrespondenceSet& c);

/// (MI/MU, min score, product, MI/MU squared, min score squared).
FeatureVector dm_features(const Detection& v, const Detection& w, const CorrespondenceSet& c);

/// (dt, dx, dy, dh, IoU, min score), distances normalized by mean height.
FeatureVector st_features(const Detection& v, const Detection& w);

/// Features used for an edge under a scheme. Same-frame edges always use ST6
/// because there is no correspondence between a frame and itself.
FeatureVector edge_features(FeatureScheme scheme, const Detection& v, const Detection& w,
                            const CorrespondenceSet& c);

struct SynthMatchParams {
  double density = 100.0;  // matches per frame pair
  double noise = 0.1;      // fraction of background matches
  double image_width = 1920.0;
  double image_height = 1080.0;
};

/// Surrogate for an external dense matcher. Each match links the same relative
/// position inside one ground-truth person's boxes with probability 1 - noise,
/// otherwise it joins two uniform image points.
CorrespondenceSet synth_matches(const std::vector<Track>& gt_tracks,
                                const std::vector<FramePair>& frame_pairs,
                                const SynthMatchParams& params, std::uint64_t seed);

/// All ordered frame pairs (t, t') with 1 <= t' - t <= tau_max inside [1, frames].
std::vector<FramePair> window_frame_pairs(int frames, int tau_max);

}  // namespace mctrack
