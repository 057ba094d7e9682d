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

#include <iosfwd>
#include <map>
#include <vector>

#include "mctrack/cost_model.hpp"
#include "mctrack/track.hpp"

namespace mctrack {

/// CLEAR MOT counters for one sequence.
struct EvalReport {
  double mota = 0.0;
  double motp = 0.0;  // mean IoU of matched pairs
  long fp = 0;
  long fn = 0;
  long idsw = 0;
  long frag = 0;
  double mt = 0.0;  // fraction of GT trajectories covered >= 80%
  double ml = 0.0;  // fraction covered <= 20%
  long gt_objects = 0;
  int gt_trajectories = 0;
  long matches = 0;
};

struct AccuracyBin {
  double accuracy = 0.0;
  long support = 0;
};

/// Per frame gap: share of pairs where (join probability > 0.5) == (label == 1).
using AccuracyTable = std::map<int, AccuracyBin>;

AccuracyTable pair_accuracy(const PairModel& model, const std::vector<LabeledPair>& pairs);

inline constexpr double kDefaultIouThreshold = 0.5;

/// Persistence-first matching, Hungarian completion on IoU >= iou_thresh.
EvalReport clear_mot(const std::vector<Track>& tracks, const std::vector<Track>& gt_tracks,
                     double iou_thresh = kDefaultIouThreshold);

void print_report_table(std::ostream& out, const EvalReport& report);
void print_report_csv(std::ostream& out, const EvalReport& report);

}  // namespace mctrack
