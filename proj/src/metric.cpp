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

#include "geosyn/metric.hpp"

#include "geosyn/errors.hpp"

namespace geosyn {

ConstantMetric::ConstantMetric(Eigen::MatrixXd g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0) {
    throw ValidationError("constant metric must be a non-empty square matrix");
  }
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("constant metric must be symmetric");
  }
  if (g_.llt().info() != Eigen::Success) {
    throw ValidationError("constant metric must be positive definite");
  }
}

ConstantMetric ConstantMetric::identity(int n) {
  return ConstantMetric(Eigen::MatrixXd::Identity(n, n));
}

Eigen::MatrixXd ConstantMetric::metric(const Eigen::VectorXd& q) const {
  if (q.size() != g_.rows()) throw ValidationError("configuration size does not match metric");
  return g_;
}

MetricEvaluation ConstantMetric::evaluate(const Eigen::VectorXd& q) const {
  return {metric(q), std::vector<Eigen::MatrixXd>(g_.rows(), Eigen::MatrixXd::Zero(dof(), dof()))};
}

Eigen::MatrixXd ChainMetric::metric(const Eigen::VectorXd& q) const {
  Eigen::MatrixXd g;
  mass_matrix_with_derivatives(model_, q, g, nullptr);
  return g;
}

MetricEvaluation ChainMetric::evaluate(const Eigen::VectorXd& q) const {
  MetricEvaluation out;
  mass_matrix_with_derivatives(model_, q, out.metric, &out.derivatives);
  return out;
}

}  // namespace geosyn
