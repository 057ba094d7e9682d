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

#include <Eigen/Core>

namespace mctrack {

/// Minimum-cost assignment for a rectangular cost matrix. Returns, for every
/// row, the assigned column or -1 when the row is left unassigned (only when
/// there are more rows than columns).
std::vector<int> linear_sum_assignment(const Eigen::MatrixXd& cost);

}  // namespace mctrack
