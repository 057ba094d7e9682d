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

#include <vector>

namespace mctrack {

/// A person hypothesis. Position is stored as the box center.
struct Detection {
  int id = 0;
  int frame = 1;
  double x = 0.0;  // center
  double y = 0.0;  // center
  double w = 0.0;
  double h = 0.0;
  double score = 0.0;
};

/// Axis-aligned box in top-left form.
struct BoundingBox {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return left + width; }
  double bottom() const { return top + height; }
  double area() const { return width * height; }

  /// Half-open containment: left <= px < right, top <= py < bottom.
  bool contains(double px, double py) const {
    return px >= left && px < right() && py >= top && py < bottom();
  }
};

BoundingBox box_of(const Detection& d);

/// Converts a top-left box to a detection in center form.
Detection detection_from_box(int id, int frame, const BoundingBox& box, double score);

/// Intersection over union. Throws InvalidInput on non-positive dimensions.
double iou(const BoundingBox& a, const BoundingBox& b);

}  // namespace mctrack
