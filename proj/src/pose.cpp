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

#include "geosyn/pose.hpp"

#include <algorithm>
#include <cmath>

namespace geosyn {

Eigen::Vector3d quaternion_log(const Eigen::Quaterniond& q_in) {
  Eigen::Quaterniond q = q_in.normalized();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const Eigen::Vector3d v = q.vec();
  const double s = v.norm();
  if (s < 1e-12) return 2.0 * v / q.w();
  return v / s * (2.0 * std::atan2(s, q.w()));
}

Vector6d pose_log(const TaskPose& x1, const TaskPose& x2) {
  Vector6d out;
  out.head<3>() = x2.position - x1.position;
  out.tail<3>() = quaternion_log(x1.orientation.conjugate() * x2.orientation);
  return out;
}

Vector6d pose_log_world(const TaskPose& x1, const TaskPose& x2) {
  Vector6d out;
  out.head<3>() = x2.position - x1.position;
  out.tail<3>() = quaternion_log(x2.orientation * x1.orientation.conjugate());
  return out;
}

double orientation_distance(const Eigen::Quaterniond& qa, const Eigen::Quaterniond& qb) {
  const double c = std::clamp(std::abs(qa.normalized().dot(qb.normalized())), 0.0, 1.0);
  return 2.0 * std::acos(c);
}

Eigen::MatrixXd damped_pseudo_inverse(const Eigen::MatrixXd& jacobian, double damping) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::VectorXd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv[i] = s[i] / (s[i] * s[i] + damping * damping);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace geosyn
