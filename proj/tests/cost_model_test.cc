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
#include "mctrack/cost_model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mctrack/error.hpp"
#include "mctrack/logistic.hpp"
#include "oracles.hpp"

namespace mctrack {
namespace {

LabeledPair st_pair(int dt, double iou_value, int label, double extra = 0.0) {
  FeatureVector f{FeatureScheme::kST6, Eigen::VectorXd(6)};
  f.values << dt, extra, 0.0, 0.0, iou_value, 1.0;
  return {0, 1, dt, f, label};
}

TEST(LossAndGradientTest, ZeroParametersBalancedLabels) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, 3);
  Eigen::VectorXd y(10);
  y << 1, 0, 1, 0, 1, 0, 1, 0, 1, 0;
  const auto lg = logistic_loss_and_gradient<double>(Eigen::VectorXd::Zero(4), x, y, 1e-4);
  EXPECT_NEAR(lg.loss, std::log(2.0), 1e-15);
  EXPECT_NEAR(lg.gradient(0), 0.0, 1e-15);
}

TEST(LossAndGradientTest, MatchesCentralDifferences) {
  std::mt19937 rng(17);
  std::normal_distribution<double> normal;
  for (int draw = 0; draw < 20; ++draw) {
    const int n = 30, d = 5;
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n), theta(d + 1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(i, j) = normal(rng);
      y(i) = normal(rng) > 0 ? 1 : 0;
    }
    for (int j = 0; j <= d; ++j) theta(j) = normal(rng);

    const auto lg = logistic_loss_and_gradient<double>(theta, x, y, 1e-2);
    const double h = 1e-5;
    Eigen::VectorXd fd(d + 1);
    for (int j = 0; j <= d; ++j) {
      Eigen::VectorXd tp = theta, tm = theta;
      tp(j) += h;
      tm(j) -= h;
      fd(j) = (logistic_loss_and_gradient<double>(tp, x, y, 1e-2).loss -
               logistic_loss_and_gradient<double>(tm, x, y, 1e-2).loss) / (2 * h);
    }
    EXPECT_LT((fd - lg.gradient).norm() / lg.gradient.norm(), 1e-5);
  }
}

TEST(LossAndGradientTest, SaturatedPairStaysFinite) {
  Eigen::MatrixXd x(1, 1);
  x << 1.0;
  Eigen::VectorXd y(1), theta(2);
  y << 1.0;
  theta << 800.0, 800.0;
  const auto good = logistic_loss_and_gradient<double>(theta, x, y, 0.0);
  EXPECT_TRUE(std::isfinite(good.loss));
  EXPECT_TRUE(good.gradient.allFinite());
  y << 0.0;
  const auto bad = logistic_loss_and_gradient<double>(theta, x, y, 0.0);
  EXPECT_TRUE(std::isfinite(bad.loss));
  EXPECT_NEAR(bad.loss, 1600.0, 1e-9);
}

TEST(LossAndGradientTest, SinglePrecisionInstantiation) {
  Eigen::MatrixXf x = Eigen::MatrixXf::Random(8, 2);
  Eigen::VectorXf y = Eigen::VectorXf::Zero(8);
  y.head(4).setOnes();
  const auto lg = logistic_loss_and_gradient<float>(Eigen::VectorXf::Zero(3), x, y, 0.0f);
  EXPECT_NEAR(lg.loss, std::log(2.0f), 1e-6f);
}

TEST(TrainTest, SeparableDataIsClassifiedCorrectly) {
  std::vector<LabeledPair> pairs;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double v = u(rng);
    pairs.push_back(st_pair(1, v, v > 0.5 ? 1 : 0));
  }
  const TrainReport r = train(pairs, FeatureScheme::kST6, 1);
  int correct = 0;
  for (const LabeledPair& p : pairs) correct += (join_probability(r.model, p.features) > 0.5) == (p.label == 1);
  EXPECT_GE(correct / 200.0, 0.99);
}

TEST(TrainTest, UninformativeFeaturesGivePrior) {
  std::vector<LabeledPair> pairs;
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  int positives = 0;
  for (int i = 0; i < 2000; ++i) {
    const int label = u(rng) < 0.3 ? 1 : 0;
    positives += label;
    pairs.push_back(st_pair(2, u(rng), label, u(rng)));
  }
  const double prior = positives / 2000.0;
  const TrainReport r = train(pairs, FeatureScheme::kST6, 2);
  for (double a = 0.0; a <= 1.0; a += 0.25)
    for (double b = 0.0; b <= 1.0; b += 0.25)
      EXPECT_NEAR(join_probability(r.model, st_pair(2, a, 0, b).features), prior, 0.05);
}

TEST(TrainTest, OptimumAgreesWithNewtonOracle) {
  std::mt19937 rng(23);
  std::normal_distribution<double> normal;
  std::vector<LabeledPair> pairs;
  for (int i = 0; i < 400; ++i) {
    FeatureVector f{FeatureScheme::kDM5, Eigen::VectorXd(5)};
    const double a = normal(rng), b = normal(rng);
    f.values << a, b, a * b, a * a, b * b;
    const double z = 0.8 * a - 0.5 * b + 0.3 * normal(rng) * 3;
    pairs.push_back({0, 1, 3, f, z > 0 ? 1 : 0});
  }
  TrainConfig config;
  const TrainReport r = train(pairs, FeatureScheme::kDM5, 3, config);

  // Standardize independently and minimize with Newton's method.
  Eigen::MatrixXd x(400, 5);
  Eigen::VectorXd y(400);
  for (int i = 0; i < 400; ++i) {
    x.row(i) = pairs[i].features.values.transpose();
    y(i) = pairs[i].label;
  }
  for (int j = 0; j < 5; ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().mean());
    x.col(j) = (x.col(j).array() - mean) / sd;
  }
  const double oracle_min = oracle::newton_logistic_minimum(x, y, config.lambda);
  EXPECT_NEAR(r.loss, oracle_min, 1e-6);
  EXPECT_LE(r.gradient_norm, 1e-6);
}

TEST(TrainTest, LossIsMonotoneAlongIterations) {
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  std::vector<LabeledPair> pairs;
  for (int i = 0; i < 300; ++i) {
    const double v = normal(rng);
    pairs.push_back(st_pair(4, v, v + 0.5 * normal(rng) > 0 ? 1 : 0, normal(rng)));
  }
  TrainConfig config;
  config.record_trace = true;
  const TrainReport r = train(pairs, FeatureScheme::kST6, 4, config);
  ASSERT_GT(r.loss_trace.size(), 2u);
  for (std::size_t i = 1; i < r.loss_trace.size(); ++i) EXPECT_LE(r.loss_trace[i], r.loss_trace[i - 1]);
}

TEST(TrainTest, SingleClassBinIsRejected) {
  std::vector<LabeledPair> pairs{st_pair(1, 0.1, 1), st_pair(1, 0.9, 1), st_pair(2, 0.5, 0)};
  EXPECT_THROW(train(pairs, FeatureScheme::kST6, 1), InvalidInput);
  EXPECT_THROW(train(pairs, FeatureScheme::kST6, 5), InvalidInput);
}

TEST(TrainTest, ModelLevelTrainingFallsBackToPrior) {
  std::vector<LabeledPair> pairs{st_pair(0, 0.1, 0), st_pair(0, 0.2, 0), st_pair(1, 0.1, 0),
                                 st_pair(1, 0.9, 1)};
  const PairModel m = train_pair_model(pairs, FeatureScheme::kST6, 2);
  ASSERT_EQ(m.bins.size(), 3u);
  // Bin 0: no positives among two pairs -> prior 1/4.
  EXPECT_NEAR(join_probability(m, st_pair(0, 0.9, 0).features, 0), 0.25, 1e-12);
  // Bin 2 is empty -> prior 1/2.
  EXPECT_NEAR(join_probability(m, st_pair(2, 0.9, 0).features, 2), 0.5, 1e-12);
}

BinModel zero_bin(FeatureScheme s) {
  const int d = feature_dim(s);
  return {s, Eigen::VectorXd::Zero(d + 1), Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d)};
}

TEST(JoinProbabilityTest, ZeroParametersGiveOneHalf) {
  PairModel m{FeatureScheme::kST6, 0, {zero_bin(FeatureScheme::kST6)}};
  EXPECT_EQ(join_probability(m, st_pair(0, 0.3, 0).features, 0), 0.5);
  EXPECT_EQ(edge_cost(m, st_pair(0, 0.3, 0).features, 0), 0.0);
}

TEST(JoinProbabilityTest, LogOfThreeGivesThreeQuarters) {
  BinModel b = zero_bin(FeatureScheme::kST6);
  b.theta(0) = std::log(3.0);
  PairModel m{FeatureScheme::kST6, 0, {b}};
  EXPECT_NEAR(join_probability(m, st_pair(0, 0.3, 0).features, 0), 0.75, 1e-15);
  EXPECT_NEAR(edge_cost(m, st_pair(0, 0.3, 0).features, 0), std::log(3.0), 1e-12);
}

TEST(JoinProbabilityTest, StandardizationIsApplied) {
  BinModel b = zero_bin(FeatureScheme::kST6);
  b.theta(5) = 2.0;  // IoU column
  b.mean(4) = 0.5;
  b.sigma(4) = 0.25;
  PairModel m{FeatureScheme::kST6, 0, {b}};
  // (0.75 - 0.5) / 0.25 = 1 -> z = 2.
  EXPECT_NEAR(join_probability(m, st_pair(0, 0.75, 0).features, 0), sigmoid(2.0), 1e-15);
}

TEST(EdgeCostTest, ClampBoundsTheCost) {
  BinModel b = zero_bin(FeatureScheme::kST6);
  b.theta(0) = 100.0;
  PairModel m{FeatureScheme::kST6, 0, {b}};
  const double c = edge_cost(m, st_pair(0, 0.3, 0).features, 0);
  EXPECT_NEAR(c, std::log((1 - 1e-6) / 1e-6), 1e-9);
  EXPECT_NEAR(c, 13.8155, 1e-4);
  b.theta(0) = -100.0;
  PairModel neg{FeatureScheme::kST6, 0, {b}};
  EXPECT_NEAR(edge_cost(neg, st_pair(0, 0.3, 0).features, 0), -c, 1e-9);
}

TEST(EdgeCostTest, LogitIsAntisymmetric) {
  for (double p = 0.01; p < 1.0; p += 0.07) EXPECT_NEAR(logit(p), -logit(1.0 - p), 1e-12);
}

TEST(JoinProbabilityTest, UnknownBinOrSchemeIsRejected) {
  PairModel m{FeatureScheme::kST6, 0, {zero_bin(FeatureScheme::kST6)}};
  EXPECT_THROW(join_probability(m, st_pair(1, 0.3, 0).features, 1), InvalidInput);
  FeatureVector dm{FeatureScheme::kDM5, Eigen::VectorXd::Zero(5)};
  EXPECT_THROW(join_probability(m, dm, 0), InvalidInput);
}

TEST(ModelFileTest, RoundTripsBitExactly) {
  std::mt19937 rng(8);
  std::normal_distribution<double> normal;
  PairModel m;
  m.scheme = FeatureScheme::kDM5;
  m.tau_max = 3;
  for (int dt = 0; dt <= 3; ++dt) {
    BinModel b = zero_bin(bin_scheme(m.scheme, dt));
    for (Eigen::Index i = 0; i < b.theta.size(); ++i) b.theta(i) = normal(rng) / 3.0;
    for (Eigen::Index i = 0; i < b.mean.size(); ++i) {
      b.mean(i) = normal(rng) * 1e-7;
      b.sigma(i) = std::exp(normal(rng));
    }
    m.bins.push_back(b);
  }
  std::stringstream first;
  write_model(first, m);
  const PairModel back = read_model(first);
  std::stringstream second;
  write_model(second, back);
  EXPECT_EQ(first.str(), second.str());
  for (int dt = 0; dt <= 3; ++dt) {
    EXPECT_EQ(back.bins[dt].scheme, m.bins[dt].scheme);
    EXPECT_EQ(back.bins[dt].theta, m.bins[dt].theta);
    EXPECT_EQ(back.bins[dt].mean, m.bins[dt].mean);
    EXPECT_EQ(back.bins[dt].sigma, m.bins[dt].sigma);
  }
}

TEST(ModelFileTest, MalformedInputNamesTheLine) {
  std::stringstream in("mctrack-pair-model 1\nscheme st\ntau_max 0\nbin 0 st\ntheta 1 2\n");
  try {
    read_model(in, "m.txt");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

Track gt_track(int id, double left, int first, int last) {
  Track t;
  t.id = id;
  for (int f = first; f <= last; ++f) t.boxes[f] = {left, 100, 40, 100};
  return t;
}

TEST(HarvestPairsTest, SameIdentityIsPositive) {
  const std::vector<Track> gt{gt_track(7, 100, 1, 2)};
  const std::vector<Detection> dets{detection_from_box(0, 1, {101, 100, 40, 100}, 0.9),
                                    detection_from_box(1, 2, {99, 100, 40, 100}, 0.8)};
  const auto pairs = harvest_pairs(dets, gt, 10, 0.5, FeatureScheme::kST6, {});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].label, 1);
  EXPECT_EQ(pairs[0].dt, 1);
}

TEST(HarvestPairsTest, BackgroundDetectionIsNegative) {
  const std::vector<Track> gt{gt_track(7, 100, 1, 2)};
  const std::vector<Detection> dets{detection_from_box(0, 1, {100, 100, 40, 100}, 0.9),
                                    detection_from_box(1, 1, {700, 600, 40, 100}, 0.8),
                                    detection_from_box(2, 2, {701, 600, 40, 100}, 0.8)};
  const auto pairs = harvest_pairs(dets, gt, 10, 0.5, FeatureScheme::kDM5, {});
  ASSERT_EQ(pairs.size(), 3u);
  for (const LabeledPair& p : pairs) EXPECT_EQ(p.label, 0);
  EXPECT_EQ(pairs[0].features.scheme, FeatureScheme::kST6);  // same frame
}

TEST(HarvestPairsTest, HighestOverlapWins) {
  const std::vector<Track> gt{gt_track(1, 100, 1, 1), gt_track(2, 120, 1, 1)};
  const std::vector<Detection> dets{detection_from_box(0, 1, {118, 100, 40, 100}, 0.9)};
  EXPECT_EQ(assign_identities(dets, gt, 0.5), std::vector<int>{2});
}

TEST(HarvestPairsTest, EmptyGroundTruthIsRejected) {
  const std::vector<Detection> dets{detection_from_box(0, 1, {100, 100, 40, 100}, 0.9)};
  EXPECT_THROW(harvest_pairs(dets, {}, 10, 0.5, FeatureScheme::kST6, {}), InvalidInput);
}

}  // namespace
}  // namespace mctrack
