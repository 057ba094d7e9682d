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
#include <string>
#include <vector>

#include "mctrack/geometry.hpp"
#include "mctrack/match_features.hpp"
#include "mctrack/track.hpp"

namespace mctrack {

// MOTChallenge detection rows: frame,id,left,top,width,height,score,-1,-1,-1.
// The id column is ignored; detections are numbered by row order.
std::vector<Detection> read_detections(std::istream& in, const std::string& source);
std::vector<Detection> load_detections(const std::string& path);
void write_detections(std::ostream& out, const std::vector<Detection>& detections);

// MOTChallenge ground truth rows: frame,id,left,top,width,height,flag,class,visibility.
// Rows with flag 0 are skipped. Tracks come back sorted by id.
std::vector<Track> read_gt(std::istream& in, const std::string& source);
std::vector<Track> load_gt(const std::string& path);
void write_gt(std::ostream& out, const std::vector<Track>& tracks);

// Correspondences: "t t' px py px' py'", one match per line.
CorrespondenceSet read_matches(std::istream& in, const std::string& source);
CorrespondenceSet load_matches(const std::string& path);
void write_matches(std::ostream& out, const CorrespondenceSet& matches);

// Tracker output in MOT submission form: frame,id,left,top,width,height,-1,-1,-1,-1,
// ordered by frame then id.
std::vector<Track> read_tracks(std::istream& in, const std::string& source);
std::vector<Track> load_tracks(const std::string& path);
void write_tracks(std::ostream& out, const std::vector<Track>& tracks);

struct SequenceInfo {
  std::string name = "synthetic";
  int frames = 0;
  int image_width = 1920;
  int image_height = 1080;
};

// MOT seqinfo.ini subset.
SequenceInfo load_sequence_info(const std::string& path);
void write_sequence_info(std::ostream& out, const SequenceInfo& info);

}  // namespace mctrack
