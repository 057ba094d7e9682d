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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mctrack/error.hpp"
#include "mctrack/logistic.hpp"
#include "mctrack/text.hpp"
#include "mctrack/tracking_graph.hpp"

namespace mctrack {

std::vector<int> assign_identities(const std::vector<Detection>& detections,
                                   const std::vector<Track>& gt_tracks, double iou_assign) {
  std::vector<int> identity(detections.size(), kBackground);
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const BoundingBox box = box_of(detections[i]);
    double best = -1.0;
    for (const Track& t : gt_tracks) {
      auto it = t.boxes.find(detections[i].frame);
      if (it == t.boxes.end()) continue;
      const double overlap = iou(box, it->second);
      if (overlap >= iou_assign && overlap > best) {
        best = overlap;
        identity[i] = t.id;
      }
    }
  }
  return identity;
}

std::vector<LabeledPair> harvest_pairs(const std::vector<Detection>& detections,
                                       const std::vector<Track>& gt_tracks, int tau_max,
                                       double iou_assign, FeatureScheme scheme,
                                       const CorrespondenceSet& correspondences) {
  const bool any_gt = std::any_of(gt_tracks.begin(), gt_tracks.end(),
                                  [](const Track& t) { return !t.empty(); });
  if (!any_gt) throw InvalidInput("no supervision: ground truth is empty");

  const TrackingGraph graph = build_graph(detections, tau_max);
  const std::vector<int> identity = assign_identities(graph.nodes, gt_tracks, iou_assign);

  std::vector<LabeledPair> pairs;
  pairs.reserve(graph.edges.size());
  for (const GraphEdge& e : graph.edges) {
    const Detection& v = graph.nodes[e.u];
    const Detection& w = graph.nodes[e.v];
    const int iv = identity[e.u], iw = identity[e.v];
    const int label = (iv != kBackground && iv == iw) ? 1 : 0;
    pairs.push_back({v.id, w.id, e.dt, edge_features(scheme, v, w, correspondences), label});
  }
  return pairs;
}

void standardization(const Eigen::MatrixXd& features, Eigen::VectorXd& mean,
                     Eigen::VectorXd& sigma) {
  const Eigen::Index n = features.rows();
  mean = features.colwise().mean().transpose();
  sigma.resize(features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const double var = n > 0 ? (features.col(j).array() - mean(j)).square().sum() / n : 0.0;
    const double s = std::sqrt(var);
    sigma(j) = s > 1e-12 ? s : 1.0;
  }
}

namespace {

Eigen::VectorXd standardize(const BinModel& bin, const Eigen::VectorXd& raw) {
  return ((raw - bin.mean).array() / bin.sigma.array()).matrix();
}

BinModel prior_only(FeatureScheme scheme, long positives, long total) {
  const int dim = feature_dim(scheme);
  BinModel bin;
  bin.scheme = scheme;
  bin.theta = Eigen::VectorXd::Zero(dim + 1);
  const double p = std::clamp((positives + 1.0) / (total + 2.0), kProbabilityClamp,
                              1.0 - kProbabilityClamp);
  bin.theta(0) = logit(p);
  bin.mean = Eigen::VectorXd::Zero(dim);
  bin.sigma = Eigen::VectorXd::Ones(dim);
  return bin;
}

}  // namespace

TrainReport train(const std::vector<LabeledPair>& pairs, FeatureScheme scheme, int dt,
                  const TrainConfig& config) {
  const FeatureScheme used = bin_scheme(scheme, dt);
  const int dim = feature_dim(used);

  std::vector<const LabeledPair*> rows;
  for (const LabeledPair& p : pairs) {
    if (p.dt != dt) continue;
    if (p.features.scheme != used || p.features.values.size() != dim) {
      throw InvalidInput("train: pair feature scheme does not match bin " + std::to_string(dt));
    }
    rows.push_back(&p);
  }
  const long positives = std::count_if(rows.begin(), rows.end(),
                                       [](const LabeledPair* p) { return p->label == 1; });
  if (positives == 0 || positives == static_cast<long>(rows.size())) {
    throw InvalidInput("degenerate labels in bin " + std::to_string(dt));
  }

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd x(n, dim);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = rows[i]->features.values.transpose();
    y(i) = rows[i]->label;
  }

  TrainReport report;
  BinModel& bin = report.model;
  bin.scheme = used;
  standardization(x, bin.mean, bin.sigma);
  const Eigen::MatrixXd z =
      ((x.rowwise() - bin.mean.transpose()).array().rowwise() / bin.sigma.transpose().array())
          .matrix();

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim + 1);
  auto current = logistic_loss_and_gradient<double>(theta, z, y, config.lambda);
  if (config.record_trace) report.loss_trace.push_back(current.loss);

  // Armijo backtracking; the accepted step seeds the next trial (doubled).
  double step = 1.0;
  int it = 0;
  for (; it < config.max_iterations; ++it) {
    const double gnorm2 = current.gradient.squaredNorm();
    if (std::sqrt(gnorm2) <= config.tolerance) break;
    double t = std::min(step * 2.0, 1e6);
    bool accepted = false;
    while (t > 1e-20) {
      Eigen::VectorXd candidate = theta - t * current.gradient;
      auto next = logistic_loss_and_gradient<double>(candidate, z, y, config.lambda);
      if (next.loss <= current.loss - 1e-4 * t * gnorm2) {
        theta = std::move(candidate);
        current = std::move(next);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    step = t;
    if (config.record_trace) report.loss_trace.push_back(current.loss);
  }

  bin.theta = theta;
  report.iterations = it;
  report.loss = current.loss;
  report.gradient_norm = current.gradient.norm();
  return report;
}

PairModel train_pair_model(const std::vector<LabeledPair>& pairs, FeatureScheme scheme,
                           int tau_max, const TrainConfig& config) {
  if (tau_max < 0) throw InvalidInput("train_pair_model: tau_max must be non-negative");
  PairModel model;
  model.scheme = scheme;
  model.tau_max = tau_max;
  for (int dt = 0; dt <= tau_max; ++dt) {
    long positives = 0, total = 0;
    for (const LabeledPair& p : pairs) {
      if (p.dt != dt) continue;
      ++total;
      positives += p.label == 1;
    }
    if (positives == 0 || positives == total) {
      model.bins.push_back(prior_only(bin_scheme(scheme, dt), positives, total));
    } else {
      model.bins.push_back(train(pairs, scheme, dt, config).model);
    }
  }
  return model;
}

double join_probability(const BinModel& bin, const FeatureVector& f) {
  if (f.scheme != bin.scheme || f.values.size() != bin.mean.size()) {
    throw InvalidInput("join_probability: feature scheme does not match model bin");
  }
  const double z = bin.theta(0) + bin.theta.tail(bin.theta.size() - 1).dot(standardize(bin, f.values));
  return std::clamp(sigmoid(z), kProbabilityClamp, 1.0 - kProbabilityClamp);
}

double join_probability(const PairModel& model, const FeatureVector& f, int dt) {
  if (dt < 0 || dt >= static_cast<int>(model.bins.size())) {
    throw InvalidInput("join_probability: no model bin for frame gap " + std::to_string(dt));
  }
  return join_probability(model.bins[dt], f);
}

double edge_cost(const PairModel& model, const FeatureVector& f, int dt) {
  return logit(join_probability(model, f, dt));
}

namespace {

void write_vector(std::ostream& out, const char* key, const Eigen::VectorXd& v) {
  out << key;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << format_double(v(i));
  out << '\n';
}

}  // namespace

void write_model(std::ostream& out, const PairModel& model) {
  out << "mctrack-pair-model 1\n";
  out << "scheme " << scheme_name(model.scheme) << '\n';
  out << "tau_max " << model.tau_max << '\n';
  for (std::size_t dt = 0; dt < model.bins.size(); ++dt) {
    const BinModel& bin = model.bins[dt];
    out << "bin " << dt << ' ' << scheme_name(bin.scheme) << '\n';
    write_vector(out, "theta", bin.theta);
    write_vector(out, "mean", bin.mean);
    write_vector(out, "sigma", bin.sigma);
  }
}

PairModel read_model(std::istream& in, const std::string& source) {
  PairModel model;
  std::string line;
  int line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& what) { throw ParseError(source, line_no, what); };
  auto read_vector = [&](const std::vector<std::string_view>& fields, int expected) {
    if (static_cast<int>(fields.size()) != expected + 1) fail("expected " + std::to_string(expected) + " values");
    Eigen::VectorXd v(expected);
    for (int i = 0; i < expected; ++i) {
      auto value = parse_double(fields[i + 1]);
      if (!value) fail("bad number '" + std::string(fields[i + 1]) + "'");
      v(i) = *value;
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line, ' ');
    if (fields.empty()) continue;
    const std::string_view key = fields[0];
    if (!header) {
      if (key != "mctrack-pair-model") fail("missing model header");
      header = true;
    } else if (key == "scheme" && fields.size() == 2) {
      model.scheme = parse_scheme(std::string(fields[1]));
    } else if (key == "tau_max" && fields.size() == 2) {
      auto v = parse_int(fields[1]);
      if (!v || *v < 0) fail("bad tau_max");
      model.tau_max = static_cast<int>(*v);
    } else if (key == "bin" && fields.size() == 3) {
      auto dt = parse_int(fields[1]);
      if (!dt || *dt != static_cast<long long>(model.bins.size())) fail("bins must be listed in order");
      BinModel bin;
      bin.scheme = parse_scheme(std::string(fields[2]));
      model.bins.push_back(bin);
    } else if ((key == "theta" || key == "mean" || key == "sigma") && !model.bins.empty()) {
      BinModel& bin = model.bins.back();
      const int dim = feature_dim(bin.scheme);
      if (key == "theta") bin.theta = read_vector(fields, dim + 1);
      if (key == "mean") bin.mean = read_vector(fields, dim);
      if (key == "sigma") bin.sigma = read_vector(fields, dim);
    } else {
      fail("unexpected entry '" + std::string(key) + "'");
    }
  }
  if (!header) fail("empty model file");
  if (static_cast<int>(model.bins.size()) != model.tau_max + 1) fail("bin count does not match tau_max");
  for (const BinModel& bin : model.bins) {
    if (bin.theta.size() == 0 || bin.mean.size() == 0 || bin.sigma.size() == 0) fail("incomplete bin");
    if ((bin.sigma.array() <= 0.0).any()) fail("non-positive sigma");
  }
  return model;
}

void save_model(const std::string& path, const PairModel& model) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  write_model(out, model);
}

PairModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open model '" + path + "'");
  return read_model(in, path);
}

}  // namespace mctrack
