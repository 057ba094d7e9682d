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

#include <Eigen/Core>

#include "mctrack/geometry.hpp"
#include "mctrack/match_features.hpp"
#include "mctrack/track.hpp"

namespace mctrack {

inline constexpr double kProbabilityClamp = 1e-6;
inline constexpr int kBackground = -1;

struct LabeledPair {
  int v = 0;
  int w = 0;
  int dt = 0;
  FeatureVector features;
  int label = 0;  // 1: same person
};

/// Logistic parameters of one frame-gap bin. theta(0) is the bias; features
/// are z-scored with mean/sigma before the dot product.
struct BinModel {
  FeatureScheme scheme = FeatureScheme::kST6;
  Eigen::VectorXd theta;
  Eigen::VectorXd mean;
  Eigen::VectorXd sigma;
};

/// One BinModel per frame gap 0..tau_max.
struct PairModel {
  FeatureScheme scheme = FeatureScheme::kDM5;
  int tau_max = 0;
  std::vector<BinModel> bins;
};

struct TrainConfig {
  double lambda = 1e-4;
  double tolerance = 1e-8;
  int max_iterations = 10000;
  bool record_trace = false;
};

struct TrainReport {
  BinModel model;
  int iterations = 0;
  double loss = 0.0;
  double gradient_norm = 0.0;
  std::vector<double> loss_trace;
};

/// The feature scheme actually used for a frame gap under a model scheme.
inline FeatureScheme bin_scheme(FeatureScheme scheme, int dt) {
  return dt == 0 ? FeatureScheme::kST6 : scheme;
}

/// Ground-truth identity per detection (kBackground when no GT box in the
/// frame reaches iou_assign). Highest IoU wins.
std::vector<int> assign_identities(const std::vector<Detection>& detections,
                                   const std::vector<Track>& gt_tracks, double iou_assign);

/// Labeled training pairs over every tracking-graph edge.
std::vector<LabeledPair> harvest_pairs(const std::vector<Detection>& detections,
                                       const std::vector<Track>& gt_tracks, int tau_max,
                                       double iou_assign, FeatureScheme scheme,
                                       const CorrespondenceSet& correspondences);

/// Fits the bin for frame gap dt by full-batch gradient descent with
/// backtracking. Throws InvalidInput("degenerate labels") on single-class bins.
TrainReport train(const std::vector<LabeledPair>& pairs, FeatureScheme scheme, int dt,
                  const TrainConfig& config = {});

/// Trains every bin. Bins without both labels fall back to a bias-only model
/// at the Laplace-smoothed class prior.
PairModel train_pair_model(const std::vector<LabeledPair>& pairs, FeatureScheme scheme,
                           int tau_max, const TrainConfig& config = {});

/// Standardizes features of one bin; zero-variance columns get sigma = 1.
void standardization(const Eigen::MatrixXd& features, Eigen::VectorXd& mean,
                     Eigen::VectorXd& sigma);

double join_probability(const BinModel& bin, const FeatureVector& f);
double join_probability(const PairModel& model, const FeatureVector& f, int dt);

/// Signed multicut cost: logit of the join probability. Positive values
/// discourage cutting.
double edge_cost(const PairModel& model, const FeatureVector& f, int dt);

void write_model(std::ostream& out, const PairModel& model);
PairModel read_model(std::istream& in, const std::string& source = "<model>");
void save_model(const std::string& path, const PairModel& model);
PairModel load_model(const std::string& path);

}  // namespace mctrack
