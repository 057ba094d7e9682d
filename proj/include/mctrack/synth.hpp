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
#include <vector>

#include "mctrack/geometry.hpp"
#include "mctrack/io.hpp"
#include "mctrack/match_features.hpp"
#include "mctrack/multicut.hpp"
#include "mctrack/track.hpp"

namespace mctrack {

/// Detections, optional ground truth and correspondences of one sequence.
struct SequenceBundle {
  SequenceInfo info;
  std::vector<Detection> detections;
  std::vector<Track> gt;
  CorrespondenceSet matches;
  std::vector<int> truth;  // generator identity per detection, kBackground for false positives
};

/// Detections of `person` are withheld for `length` frames starting at `start`.
struct Occlusion {
  int person = 1;
  int start = 1;
  int length = 0;
};

struct SynthConfig {
  int persons = 5;
  int frames = 200;
  int image_width = 960;
  int image_height = 540;
  double min_height = 80.0;
  double max_height = 160.0;
  double aspect = 0.41;       // width / height
  double speed = 2.0;         // std of per-axis velocity, px/frame
  double motion_noise = 0.5;  // std of per-frame position noise, px
  double camera_jitter = 0.0; // std of the per-frame global camera step, px
  bool staggered = true;      // random birth/death instead of full-length tracks
  double box_jitter = 0.03;   // detection noise relative to box height
  double fp_rate = 0.1;       // false positives per person and frame
  double fn_rate = 0.05;      // chance a visible box is missed
  double duplicate_rate = 0.1;
  int clutter = 2;             // static non-person structures the detector fires on
  double clutter_rate = 0.1;   // chance a clutter object is detected in a frame
  double tp_score_mean = 0.7, tp_score_std = 0.15;
  double fp_score_mean = 0.3, fp_score_std = 0.15;
  std::vector<Occlusion> occlusions;
  SynthMatchParams matches{40.0, 0.1};
  int match_window = 10;
};

/// Noise-free configuration: exact boxes, no false or missed detections.
SynthConfig noiseless_config();

/// Constant-velocity persons plus noise, detector errors and synthetic
/// correspondences. Fully determined by the seed.
SequenceBundle synth_sequence(const SynthConfig& config, std::uint64_t seed);

struct InstanceConfig {
  int frames = 500;
  int persons = 10;         // one node per person and frame
  int tau_max = 10;
  double signal = 2.0;      // mean |cost| at dt = 1
  double decay = 0.15;      // signal lost per frame of gap
  double noise = 2.5;       // std of additive cost noise
};

/// Tracking-shaped multicut instance with known clusters: nodes of one
/// person attract, all others repel, noisily. Node v is person v % persons.
MulticutInstance synth_tracking_instance(const InstanceConfig& config, std::uint64_t seed);

}  // namespace mctrack
