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
#include "mctrack/geometry.hpp"

#include <algorithm>

#include "mctrack/error.hpp"

namespace mctrack {

BoundingBox box_of(const Detection& d) {
  return {d.x - d.w / 2.0, d.y - d.h / 2.0, d.w, d.h};
}

Detection detection_from_box(int id, int frame, const BoundingBox& box, double score) {
  Detection d;
  d.id = id;
  d.frame = frame;
  d.x = box.left + box.width / 2.0;
  d.y = box.top + box.height / 2.0;
  d.w = box.width;
  d.h = box.height;
  d.score = score;
  return d;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  if (!(a.width > 0.0 && a.height > 0.0 && b.width > 0.0 && b.height > 0.0)) {
    throw InvalidInput("iou: box dimensions must be positive");
  }
  const double iw = std::min(a.right(), b.right()) - std::max(a.left, b.left);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top, b.top);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace mctrack
