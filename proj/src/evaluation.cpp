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
#include "mctrack/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <tuple>

#include "mctrack/error.hpp"
#include "mctrack/hungarian.hpp"
#include "mctrack/text.hpp"

namespace mctrack {

AccuracyTable pair_accuracy(const PairModel& model, const std::vector<LabeledPair>& pairs) {
  std::map<int, std::pair<long, long>> counts;  // correct, support
  for (const LabeledPair& p : pairs) {
    const bool predicted_same = join_probability(model, p.features, p.dt) > 0.5;
    auto& [correct, support] = counts[p.dt];
    correct += predicted_same == (p.label == 1);
    ++support;
  }
  AccuracyTable table;
  for (const auto& [dt, c] : counts) {
    table[dt] = {static_cast<double>(c.first) / c.second, c.second};
  }
  return table;
}

namespace {

struct FrameObject {
  int id;
  BoundingBox box;
};

std::map<int, std::vector<FrameObject>> by_frame(const std::vector<Track>& tracks) {
  std::map<int, std::vector<FrameObject>> out;
  for (const Track& t : tracks)
    for (const auto& [frame, box] : t.boxes) out[frame].push_back({t.id, box});
  // Geometry first, so the order does not depend on how ids were numbered.
  for (auto& [frame, objects] : out) {
    std::sort(objects.begin(), objects.end(), [](const FrameObject& a, const FrameObject& b) {
      return std::tie(a.box.left, a.box.top, a.box.width, a.box.height, a.id) <
             std::tie(b.box.left, b.box.top, b.box.width, b.box.height, b.id);
    });
  }
  return out;
}

}  // namespace

EvalReport clear_mot(const std::vector<Track>& tracks, const std::vector<Track>& gt_tracks,
                     double iou_thresh) {
  if (!(iou_thresh > 0.0 && iou_thresh < 1.0))
    throw InvalidInput("clear_mot: iou threshold must lie in (0, 1)");
  const auto gt_frames = by_frame(gt_tracks);
  if (gt_frames.empty()) throw InvalidInput("clear_mot: ground truth is empty");
  const auto hyp_frames = by_frame(tracks);

  std::set<int> frames;
  for (const auto& [f, objs] : gt_frames) frames.insert(f);
  for (const auto& [f, objs] : hyp_frames) frames.insert(f);

  EvalReport r;
  std::map<int, int> last_pairing;   // gt id -> hyp id
  std::map<int, bool> was_tracked;   // status at the gt's previous frame
  std::map<int, std::pair<long, long>> coverage;  // gt id -> matched, present
  double overlap_sum = 0.0;
  static const std::vector<FrameObject> kNone;

  for (int frame : frames) {
    auto gi = gt_frames.find(frame);
    auto hi = hyp_frames.find(frame);
    const auto& gts = gi == gt_frames.end() ? kNone : gi->second;
    const auto& hyps = hi == hyp_frames.end() ? kNone : hi->second;

    std::vector<int> gt_match(gts.size(), -1);
    std::vector<char> hyp_taken(hyps.size(), 0);

    for (std::size_t g = 0; g < gts.size(); ++g) {
      auto prev = last_pairing.find(gts[g].id);
      if (prev == last_pairing.end()) continue;
      for (std::size_t h = 0; h < hyps.size(); ++h) {
        if (hyps[h].id != prev->second || hyp_taken[h]) continue;
        if (iou(gts[g].box, hyps[h].box) >= iou_thresh) {
          gt_match[g] = static_cast<int>(h);
          hyp_taken[h] = 1;
        }
        break;
      }
    }

    std::vector<int> open_gt, open_hyp;
    for (std::size_t g = 0; g < gts.size(); ++g)
      if (gt_match[g] < 0) open_gt.push_back(static_cast<int>(g));
    for (std::size_t h = 0; h < hyps.size(); ++h)
      if (!hyp_taken[h]) open_hyp.push_back(static_cast<int>(h));

    if (!open_gt.empty() && !open_hyp.empty()) {
      const double forbidden = 1e6;
      Eigen::MatrixXd cost(open_gt.size(), open_hyp.size());
      for (std::size_t a = 0; a < open_gt.size(); ++a)
        for (std::size_t b = 0; b < open_hyp.size(); ++b) {
          const double o = iou(gts[open_gt[a]].box, hyps[open_hyp[b]].box);
          cost(a, b) = o >= iou_thresh ? 1.0 - o : forbidden;
        }
      const std::vector<int> assignment = linear_sum_assignment(cost);
      for (std::size_t a = 0; a < open_gt.size(); ++a) {
        const int b = assignment[a];
        if (b < 0 || cost(a, b) >= forbidden) continue;
        const int g = open_gt[a], h = open_hyp[b];
        gt_match[g] = h;
        hyp_taken[h] = 1;
        auto prev = last_pairing.find(gts[g].id);
        if (prev != last_pairing.end() && prev->second != hyps[h].id) ++r.idsw;
      }
    }

    for (std::size_t g = 0; g < gts.size(); ++g) {
      const int id = gts[g].id;
      auto& [matched, present] = coverage[id];
      ++present;
      const bool tracked = gt_match[g] >= 0;
      if (tracked) {
        ++matched;
        ++r.matches;
        overlap_sum += iou(gts[g].box, hyps[gt_match[g]].box);
        auto status = was_tracked.find(id);
        if (status != was_tracked.end() && !status->second && last_pairing.count(id)) ++r.frag;
        last_pairing[id] = hyps[gt_match[g]].id;
      } else {
        ++r.fn;
      }
      was_tracked[id] = tracked;
    }
    for (std::size_t h = 0; h < hyps.size(); ++h) r.fp += !hyp_taken[h];
    r.gt_objects += static_cast<long>(gts.size());
  }

  r.gt_trajectories = static_cast<int>(coverage.size());
  long mostly_tracked = 0, mostly_lost = 0;
  for (const auto& [id, c] : coverage) {
    const double ratio = static_cast<double>(c.first) / c.second;
    mostly_tracked += ratio >= 0.8;
    mostly_lost += ratio <= 0.2;
  }
  r.mt = static_cast<double>(mostly_tracked) / r.gt_trajectories;
  r.ml = static_cast<double>(mostly_lost) / r.gt_trajectories;
  r.mota = 1.0 - static_cast<double>(r.fp + r.fn + r.idsw) / r.gt_objects;
  r.motp = r.matches > 0 ? overlap_sum / r.matches : 0.0;
  return r;
}

void print_report_table(std::ostream& out, const EvalReport& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%8s %8s %6s %6s %6s %6s %7s %7s %8s\n", "MOTA", "MOTP", "FP",
                "FN", "IDSW", "Frag", "MT", "ML", "GT");
  out << line;
  std::snprintf(line, sizeof line, "%7.2f%% %7.2f%% %6ld %6ld %6ld %6ld %6.1f%% %6.1f%% %8ld\n",
                100.0 * r.mota, 100.0 * r.motp, r.fp, r.fn, r.idsw, r.frag, 100.0 * r.mt,
                100.0 * r.ml, r.gt_objects);
  out << line;
}

void print_report_csv(std::ostream& out, const EvalReport& r) {
  out << "MOTA," << format_double(r.mota) << '\n'
      << "MOTP," << format_double(r.motp) << '\n'
      << "FP," << r.fp << '\n'
      << "FN," << r.fn << '\n'
      << "IDSW," << r.idsw << '\n'
      << "Frag," << r.frag << '\n'
      << "MT," << format_double(r.mt) << '\n'
      << "ML," << format_double(r.ml) << '\n'
      << "GT," << r.gt_objects << '\n'
      << "GT_trajectories," << r.gt_trajectories << '\n';
}

}  // namespace mctrack
