// Copyright 2026 The geosyn Authors
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

#ifndef GEOSYN_METRIC_HPP_
#define GEOSYN_METRIC_HPP_

#include <vector>

#include <Eigen/Dense>

#include "geosyn/chain.hpp"

namespace geosyn {

/// G(q) together with the slices dG/dq_k.
struct MetricEvaluation {
  Eigen::MatrixXd metric;
  std::vector<Eigen::MatrixXd> derivatives;
};

/// Riemannian metric on a configuration space with a global chart.
/// Implementations are read-only after construction and safe to share
/// across threads.
class MetricField {
 public:
  virtual ~MetricField() = default;

  virtual int dof() const = 0;
  virtual Eigen::MatrixXd metric(const Eigen::VectorXd& q) const = 0;
  virtual MetricEvaluation evaluate(const Eigen::VectorXd& q) const = 0;
};

/// G(q) = G for all q. With G = I this is the Euclidean joint space.
class ConstantMetric final : public MetricField {
 public:
  explicit ConstantMetric(Eigen::MatrixXd g);
  static ConstantMetric identity(int n);

  int dof() const override { return static_cast<int>(g_.rows()); }
  Eigen::MatrixXd metric(const Eigen::VectorXd& q) const override;
  MetricEvaluation evaluate(const Eigen::VectorXd& q) const override;

 private:
  Eigen::MatrixXd g_;
};

/// Kinetic-energy metric of a serial chain: G(q) is its mass matrix.
class ChainMetric final : public MetricField {
 public:
  explicit ChainMetric(KinematicModel model) : model_(std::move(model)) {}

  int dof() const override { return model_.dof(); }
  const KinematicModel& model() const { return model_; }
  Eigen::MatrixXd metric(const Eigen::VectorXd& q) const override;
  MetricEvaluation evaluate(const Eigen::VectorXd& q) const override;

 private:
  KinematicModel model_;
};

}  // namespace geosyn

#endif  // GEOSYN_METRIC_HPP_
