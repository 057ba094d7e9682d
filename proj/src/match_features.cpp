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
#include "mctrack/match_features.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mctrack/error.hpp"

namespace mctrack {

void CorrespondenceSet::add(int from, int to, double px, double py, double qx, double qy) {
  if (from >= to) {
    throw InvalidInput("correspondence frames must satisfy t < t' (got " + std::to_string(from) +
                       " " + std::to_string(to) + ")");
  }
  auto& list = pairs_[{from, to}];
  list.push_back({static_cast<int>(list.size()), from, to, px, py, qx, qy});
}

const std::vector<PointMatch>& CorrespondenceSet::matches(int from, int to) const {
  static const std::vector<PointMatch> kNone;
  auto it = pairs_.find({from, to});
  return it == pairs_.end() ? kNone : it->second;
}

std::size_t CorrespondenceSet::size() const {
  std::size_t n = 0;
  for (const auto& [key, list] : pairs_) n += list.size();
  return n;
}

const char* scheme_name(FeatureScheme s) { return s == FeatureScheme::kDM5 ? "dm" : "st"; }

FeatureScheme parse_scheme(const std::string& name) {
  if (name == "dm" || name == "DM5") return FeatureScheme::kDM5;
  if (name == "st" || name == "ST6") return FeatureScheme::kST6;
  throw InvalidInput("unknown feature scheme '" + name + "'");
}

MatchCounts match_sets(const Detection& v, const Detection& w, const CorrespondenceSet& c) {
  if (v.frame == w.frame) return {};
  const Detection& early = v.frame < w.frame ? v : w;
  const Detection& late = v.frame < w.frame ? w : v;
  const BoundingBox be = box_of(early);
  const BoundingBox bl = box_of(late);

  MatchCounts out;
  out.has_correspondence = true;
  for (const PointMatch& m : c.matches(early.frame, late.frame)) {
    const bool in_v = be.contains(m.px, m.py);
    const bool in_w = bl.contains(m.qx, m.qy);
    out.intersection += in_v && in_w;
    out.union_size += in_v || in_w;
  }
  return out;
}

FeatureVector dm_features(const Detection& v, const Detection& w, const CorrespondenceSet& c) {
  const MatchCounts counts = match_sets(v, w, c);
  const double f1 = counts.union_size > 0
                        ? static_cast<double>(counts.intersection) / counts.union_size
                        : 0.0;
  const double f2 = std::min(v.score, w.score);
  FeatureVector f{FeatureScheme::kDM5, Eigen::VectorXd(5)};
  f.values << f1, f2, f1 * f2, f1 * f1, f2 * f2;
  return f;
}

FeatureVector st_features(const Detection& v, const Detection& w) {
  const double hbar = (v.h + w.h) / 2.0;
  if (!(hbar > 0.0)) throw InvalidInput("st_features: mean box height must be positive");
  FeatureVector f{FeatureScheme::kST6, Eigen::VectorXd(6)};
  f.values << std::abs(v.frame - w.frame), std::abs(v.x - w.x) / hbar,
      std::abs(v.y - w.y) / hbar, std::abs(v.h - w.h) / hbar, iou(box_of(v), box_of(w)),
      std::min(v.score, w.score);
  return f;
}

FeatureVector edge_features(FeatureScheme scheme, const Detection& v, const Detection& w,
                            const CorrespondenceSet& c) {
  if (scheme == FeatureScheme::kDM5 && v.frame != w.frame) return dm_features(v, w, c);
  return st_features(v, w);
}

CorrespondenceSet synth_matches(const std::vector<Track>& gt_tracks,
                                const std::vector<FramePair>& frame_pairs,
                                const SynthMatchParams& params, std::uint64_t seed) {
  if (params.density < 0.0) throw InvalidInput("synth_matches: density must be non-negative");
  if (params.noise < 0.0 || params.noise > 1.0)
    throw InvalidInput("synth_matches: noise must lie in [0, 1]");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution background(params.noise);
  const long per_pair = std::lround(params.density);

  CorrespondenceSet out;
  std::vector<std::pair<const BoundingBox*, const BoundingBox*>> shared;
  for (const auto& [from, to] : frame_pairs) {
    shared.clear();
    for (const Track& t : gt_tracks) {
      auto a = t.boxes.find(from);
      auto b = t.boxes.find(to);
      if (a != t.boxes.end() && b != t.boxes.end()) shared.emplace_back(&a->second, &b->second);
    }
    for (long k = 0; k < per_pair; ++k) {
      const bool is_background = background(rng);
      if (is_background || shared.empty()) {
        const double px = unit(rng) * params.image_width, py = unit(rng) * params.image_height;
        const double qx = unit(rng) * params.image_width, qy = unit(rng) * params.image_height;
        out.add(from, to, px, py, qx, qy);
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick(0, shared.size() - 1);
      const auto [src, dst] = shared[pick(rng)];
      const double u = unit(rng), v = unit(rng);
      out.add(from, to, src->left + u * src->width, src->top + v * src->height,
              dst->left + u * dst->width, dst->top + v * dst->height);
    }
  }
  return out;
}

std::vector<FramePair> window_frame_pairs(int frames, int tau_max) {
  std::vector<FramePair> out;
  for (int t = 1; t <= frames; ++t)
    for (int s = t + 1; s <= std::min(frames, t + tau_max); ++s) out.emplace_back(t, s);
  return out;
}

}  // namespace mctrack
