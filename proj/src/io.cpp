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
#include "mctrack/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include "mctrack/error.hpp"
#include "mctrack/text.hpp"

namespace mctrack {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

class RowReader {
 public:
  RowReader(std::istream& in, std::string source, char sep)
      : in_(in), source_(std::move(source)), sep_(sep) {}

  // Next non-empty row, or false at end of input.
  bool next(std::size_t expected) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (trim(line_).empty()) continue;
      fields_ = split_fields(line_, sep_);
      if (fields_.size() != expected) {
        fail("expected " + std::to_string(expected) + " fields, found " +
             std::to_string(fields_.size()));
      }
      return true;
    }
    return false;
  }

  double real(std::size_t i) const {
    auto v = parse_double(fields_[i]);
    if (!v) fail("field " + std::to_string(i + 1) + " is not a number");
    return *v;
  }

  int integer(std::size_t i) const {
    auto v = parse_int(fields_[i]);
    if (!v) {
      // MOT files sometimes write integers as "1.0".
      auto d = parse_double(fields_[i]);
      if (!d || *d != static_cast<double>(static_cast<long long>(*d)))
        fail("field " + std::to_string(i + 1) + " is not an integer");
      return static_cast<int>(*d);
    }
    return static_cast<int>(*v);
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }

 private:
  std::istream& in_;
  std::string source_;
  char sep_;
  std::string line_;
  int line_no_ = 0;
  std::vector<std::string_view> fields_;
};

BoundingBox read_box(const RowReader& row) {
  BoundingBox b{row.real(2), row.real(3), row.real(4), row.real(5)};
  if (!(b.width > 0.0 && b.height > 0.0)) row.fail("box width and height must be positive");
  return b;
}

std::string box_fields(const BoundingBox& b) {
  return format_double(b.left) + "," + format_double(b.top) + "," + format_double(b.width) + "," +
         format_double(b.height);
}

std::vector<Track> collect(std::map<int, Track>& by_id) {
  std::vector<Track> out;
  out.reserve(by_id.size());
  for (auto& [id, t] : by_id) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::vector<Detection> read_detections(std::istream& in, const std::string& source) {
  RowReader row(in, source, ',');
  std::vector<Detection> out;
  while (row.next(10)) {
    const int frame = row.integer(0);
    if (frame < 1) row.fail("frame must be >= 1");
    out.push_back(detection_from_box(static_cast<int>(out.size()), frame, read_box(row), row.real(6)));
  }
  return out;
}

std::vector<Detection> load_detections(const std::string& path) {
  auto in = open_input(path);
  return read_detections(in, path);
}

void write_detections(std::ostream& out, const std::vector<Detection>& detections) {
  for (const Detection& d : detections) {
    out << d.frame << ",-1," << box_fields(box_of(d)) << ',' << format_double(d.score)
        << ",-1,-1,-1\n";
  }
}

std::vector<Track> read_gt(std::istream& in, const std::string& source) {
  RowReader row(in, source, ',');
  std::map<int, Track> by_id;
  while (row.next(9)) {
    const int frame = row.integer(0);
    const int id = row.integer(1);
    if (frame < 1) row.fail("frame must be >= 1");
    const BoundingBox box = read_box(row);
    if (row.integer(6) == 0) continue;
    Track& t = by_id[id];
    t.id = id;
    if (!t.boxes.emplace(frame, box).second) row.fail("duplicate box for one id in one frame");
    t.visibility[frame] = row.real(8);
  }
  return collect(by_id);
}

std::vector<Track> load_gt(const std::string& path) {
  auto in = open_input(path);
  return read_gt(in, path);
}

void write_gt(std::ostream& out, const std::vector<Track>& tracks) {
  std::vector<std::tuple<int, int, const BoundingBox*, double>> rows;
  for (const Track& t : tracks) {
    for (const auto& [frame, box] : t.boxes) {
      auto vis = t.visibility.find(frame);
      rows.emplace_back(frame, t.id, &box, vis == t.visibility.end() ? 1.0 : vis->second);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (const auto& [frame, id, box, vis] : rows) {
    out << frame << ',' << id << ',' << box_fields(*box) << ",1,1," << format_double(vis) << '\n';
  }
}

CorrespondenceSet read_matches(std::istream& in, const std::string& source) {
  RowReader row(in, source, ' ');
  CorrespondenceSet out;
  while (row.next(6)) {
    const int from = row.integer(0), to = row.integer(1);
    if (from >= to) row.fail("match frames must satisfy t < t'");
    out.add(from, to, row.real(2), row.real(3), row.real(4), row.real(5));
  }
  return out;
}

CorrespondenceSet load_matches(const std::string& path) {
  auto in = open_input(path);
  return read_matches(in, path);
}

void write_matches(std::ostream& out, const CorrespondenceSet& matches) {
  for (const auto& [pair, list] : matches.pairs()) {
    for (const PointMatch& m : list) {
      out << m.from << ' ' << m.to << ' ' << format_double(m.px) << ' ' << format_double(m.py)
          << ' ' << format_double(m.qx) << ' ' << format_double(m.qy) << '\n';
    }
  }
}

std::vector<Track> read_tracks(std::istream& in, const std::string& source) {
  RowReader row(in, source, ',');
  std::map<int, Track> by_id;
  while (row.next(10)) {
    const int frame = row.integer(0);
    const int id = row.integer(1);
    Track& t = by_id[id];
    t.id = id;
    if (!t.boxes.emplace(frame, read_box(row)).second) row.fail("duplicate box for one track in one frame");
  }
  return collect(by_id);
}

std::vector<Track> load_tracks(const std::string& path) {
  auto in = open_input(path);
  return read_tracks(in, path);
}

void write_tracks(std::ostream& out, const std::vector<Track>& tracks) {
  std::vector<std::tuple<int, int, const BoundingBox*>> rows;
  for (const Track& t : tracks)
    for (const auto& [frame, box] : t.boxes) rows.emplace_back(frame, t.id, &box);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (const auto& [frame, id, box] : rows)
    out << frame << ',' << id << ',' << box_fields(*box) << ",-1,-1,-1,-1\n";
}

SequenceInfo load_sequence_info(const std::string& path) {
  auto in = open_input(path);
  SequenceInfo info;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key(trim(std::string_view(line).substr(0, eq)));
    const std::string_view value = trim(std::string_view(line).substr(eq + 1));
    auto number = [&]() {
      auto v = parse_int(value);
      if (!v) throw ParseError(path, line_no, "'" + key + "' must be an integer");
      return static_cast<int>(*v);
    };
    if (key == "name") info.name = std::string(value);
    else if (key == "seqLength") info.frames = number();
    else if (key == "imWidth") info.image_width = number();
    else if (key == "imHeight") info.image_height = number();
  }
  return info;
}

void write_sequence_info(std::ostream& out, const SequenceInfo& info) {
  out << "[Sequence]\n"
      << "name=" << info.name << '\n'
      << "seqLength=" << info.frames << '\n'
      << "imWidth=" << info.image_width << '\n'
      << "imHeight=" << info.image_height << '\n';
}

}  // namespace mctrack
