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

#include <cmath>

#include <Eigen/Core>

namespace mctrack {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-z));
  const Scalar e = std::exp(z);
  return e / (Scalar(1) + e);
}

/// log(1 + exp(z)) without overflow.
template <typename Scalar>
Scalar softplus(Scalar z) {
  return z > Scalar(0) ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

template <typename Scalar>
Scalar logit(Scalar p) {
  return std::log(p / (Scalar(1) - p));
}

template <typename Scalar>
struct LossGradient {
  Scalar loss;
  Vector<Scalar> gradient;
};

/// Regularized mean negative log-likelihood of a logistic model and its exact
/// gradient. theta(0) is the unpenalized bias; the remaining entries weight the
/// columns of `features` (one row per sample). Labels are 0 or 1.
template <typename Scalar>
LossGradient<Scalar> logistic_loss_and_gradient(const Vector<Scalar>& theta,
                                                const Matrix<Scalar>& features,
                                                const Vector<Scalar>& labels, Scalar lambda) {
  const Eigen::Index n = features.rows();
  const auto weights = theta.tail(theta.size() - 1);
  const Vector<Scalar> z = (features * weights).array() + theta(0);

  Scalar nll(0);
  Vector<Scalar> residual(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    nll += softplus(z(i)) - labels(i) * z(i);
    residual(i) = sigmoid(z(i)) - labels(i);
  }
  const Scalar inv_n = n > 0 ? Scalar(1) / Scalar(n) : Scalar(0);

  LossGradient<Scalar> out;
  out.loss = nll * inv_n + lambda * weights.squaredNorm();
  out.gradient.resize(theta.size());
  out.gradient(0) = residual.sum() * inv_n;
  out.gradient.tail(theta.size() - 1) =
      features.transpose() * residual * inv_n + Scalar(2) * lambda * weights;
  return out;
}

}  // namespace mctrack
