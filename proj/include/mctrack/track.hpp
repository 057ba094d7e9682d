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

#include <map>
#include <vector>

#include "mctrack/geometry.hpp"

namespace mctrack {

/// A trajectory: at most one box per frame. Used for both tracker output and
/// ground truth. Ground-truth files also carry a per-frame visibility.
struct Track {
  int id = 0;
  std::map<int, BoundingBox> boxes;
  std::map<int, double> visibility;

  bool empty() const { return boxes.empty(); }
  int birth() const { return boxes.begin()->first; }
  int death() const { return boxes.rbegin()->first; }
};

}  // namespace mctrack
