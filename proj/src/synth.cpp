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
#include "mctrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mctrack/cost_model.hpp"
#include "mctrack/error.hpp"
#include "mctrack/logistic.hpp"

namespace mctrack {

SynthConfig noiseless_config() {
  SynthConfig c;
  c.motion_noise = 0.0;
  c.box_jitter = 0.0;
  c.fp_rate = 0.0;
  c.fn_rate = 0.0;
  c.duplicate_rate = 0.0;
  c.clutter = 0;
  c.tp_score_std = 0.0;
  c.matches.noise = 0.0;
  return c;
}

namespace {

void check_rate(double r, const char* name) {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput(std::string("synth_sequence: ") + name + " must lie in [0, 1]");
}

double reflect(double v, double lo, double hi, double& velocity) {
  if (v < lo) {
    velocity = std::abs(velocity);
    return lo + (lo - v);
  }
  if (v > hi) {
    velocity = -std::abs(velocity);
    return hi - (v - hi);
  }
  return v;
}

bool occluded(const SynthConfig& c, int person, int frame) {
  for (const Occlusion& o : c.occlusions)
    if (o.person == person && frame >= o.start && frame < o.start + o.length) return true;
  return false;
}

}  // namespace

SequenceBundle synth_sequence(const SynthConfig& c, std::uint64_t seed) {
  if (c.persons < 1) throw InvalidInput("synth_sequence: need at least one person");
  if (c.frames < 2) throw InvalidInput("synth_sequence: need at least two frames");
  check_rate(c.fp_rate, "fp_rate");
  check_rate(c.fn_rate, "fn_rate");
  check_rate(c.duplicate_rate, "duplicate_rate");
  check_rate(c.clutter_rate, "clutter_rate");
  if (c.clutter < 0) throw InvalidInput("synth_sequence: clutter must be non-negative");
  if (!(c.min_height > 0.0 && c.max_height >= c.min_height))
    throw InvalidInput("synth_sequence: invalid height range");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  SequenceBundle bundle;
  bundle.info.frames = c.frames;
  bundle.info.image_width = c.image_width;
  bundle.info.image_height = c.image_height;

  std::vector<double> cam_x(c.frames + 1, 0.0), cam_y(c.frames + 1, 0.0);
  for (int f = 2; f <= c.frames; ++f) {
    cam_x[f] = cam_x[f - 1] + c.camera_jitter * normal(rng);
    cam_y[f] = cam_y[f - 1] + 0.25 * c.camera_jitter * normal(rng);
  }

  const double W = c.image_width, H = c.image_height;
  for (int p = 1; p <= c.persons; ++p) {
    int birth = 1, death = c.frames;
    if (c.staggered) {
      birth = uniform_int(1, std::max(1, c.frames / 3));
      death = uniform_int(std::min(c.frames, 2 * c.frames / 3 + 1), c.frames);
    }
    const double h = uniform(c.min_height, c.max_height);
    const double w = c.aspect * h;
    double x = uniform(w / 2, W - w / 2), y = uniform(h / 2, H - h / 2);
    double vx = c.speed * normal(rng), vy = 0.3 * c.speed * normal(rng);

    Track t;
    t.id = p;
    for (int f = birth; f <= death; ++f) {
      if (f > birth) {
        x = reflect(x + vx + c.motion_noise * normal(rng), w / 2, W - w / 2, vx);
        y = reflect(y + vy + c.motion_noise * normal(rng), h / 2, H - h / 2, vy);
      }
      t.boxes[f] = {x + cam_x[f] - w / 2, y + cam_y[f] - h / 2, w, h};
      t.visibility[f] = occluded(c, p, f) ? 0.0 : 1.0;
    }
    bundle.gt.push_back(std::move(t));
  }

  // Clutter is fixed in the scene and only moves with the camera.
  std::vector<Track> clutter;
  for (int k = 0; k < c.clutter; ++k) {
    const double h = uniform(c.min_height, c.max_height);
    const double w = c.aspect * h;
    const double left = uniform(0.0, W - w), top = uniform(0.0, H - h);
    Track t;
    t.id = c.persons + 1 + k;
    for (int f = 1; f <= c.frames; ++f) t.boxes[f] = {left + cam_x[f], top + cam_y[f], w, h};
    clutter.push_back(std::move(t));
  }

  auto jittered = [&](const BoundingBox& b, double scale) {
    const double s = c.box_jitter * scale;
    const double h = b.height * std::max(0.5, 1.0 + s * normal(rng));
    const double w = b.width * std::max(0.5, 1.0 + s * normal(rng));
    const double cx = b.left + b.width / 2 + s * b.height * normal(rng);
    const double cy = b.top + b.height / 2 + s * b.height * normal(rng);
    return BoundingBox{cx - w / 2, cy - h / 2, w, h};
  };
  auto add = [&](int frame, const BoundingBox& b, double score, int truth) {
    bundle.detections.push_back(detection_from_box(static_cast<int>(bundle.detections.size()),
                                                   frame, b, std::clamp(score, 0.0, 1.0)));
    bundle.truth.push_back(truth);
  };

  std::binomial_distribution<int> fp_count(c.persons, c.fp_rate);
  for (int f = 1; f <= c.frames; ++f) {
    for (const Track& t : bundle.gt) {
      auto it = t.boxes.find(f);
      if (it == t.boxes.end() || occluded(c, t.id, f)) continue;
      if (unit(rng) < c.fn_rate) continue;
      add(f, jittered(it->second, 1.0), c.tp_score_mean + c.tp_score_std * normal(rng), t.id);
      if (unit(rng) < c.duplicate_rate) {
        add(f, jittered(it->second, 2.0), c.tp_score_mean + c.tp_score_std * normal(rng), t.id);
      }
    }
    for (const Track& t : clutter) {
      if (unit(rng) < c.clutter_rate) {
        add(f, jittered(t.boxes.at(f), 1.0), c.fp_score_mean + c.fp_score_std * normal(rng),
            kBackground);
      }
    }
    const int fps = fp_count(rng);
    for (int k = 0; k < fps; ++k) {
      const double h = uniform(c.min_height, c.max_height);
      const double w = c.aspect * h;
      add(f, {uniform(0.0, W - w), uniform(0.0, H - h), w, h},
          c.fp_score_mean + c.fp_score_std * normal(rng), kBackground);
    }
  }

  // The matcher only sees visible persons.
  std::vector<Track> visible = bundle.gt;
  for (Track& t : visible) {
    std::erase_if(t.boxes, [&](const auto& entry) { return occluded(c, t.id, entry.first); });
  }
  visible.insert(visible.end(), clutter.begin(), clutter.end());
  SynthMatchParams params = c.matches;
  params.image_width = W;
  params.image_height = H;
  bundle.matches = synth_matches(visible, window_frame_pairs(c.frames, c.match_window), params, rng());
  return bundle;
}

MulticutInstance synth_tracking_instance(const InstanceConfig& c, std::uint64_t seed) {
  if (c.frames < 1 || c.persons < 1 || c.tau_max < 0)
    throw InvalidInput("synth_tracking_instance: frames, persons must be positive, tau_max >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double bound = logit(1.0 - kProbabilityClamp);
  std::vector<WeightedEdge> edges;
  const int n = c.frames * c.persons;
  for (int f = 0; f < c.frames; ++f) {
    for (int a = 0; a < c.persons; ++a) {
      const int u = f * c.persons + a;
      for (int g = f; g <= std::min(c.frames - 1, f + c.tau_max); ++g) {
        for (int b = g == f ? a + 1 : 0; b < c.persons; ++b) {
          const int v = g * c.persons + b;
          const int dt = g - f;
          const double strength = std::max(0.0, c.signal - c.decay * std::max(dt - 1, 0));
          const double mean = (a == b) ? strength : -c.signal;
          const double cost = std::clamp(mean + c.noise * normal(rng), -bound, bound);
          edges.push_back({u, v, cost});
        }
      }
    }
  }
  return MulticutInstance(n, std::move(edges));
}

}  // namespace mctrack
