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

#ifndef GEOSYN_POSE_HPP_
#define GEOSYN_POSE_HPP_

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "geosyn/chain.hpp"

namespace geosyn {

/// Rotation vector (axis * angle) of a unit quaternion, taken in the
/// hemisphere w >= 0 so q and -q give the same result.
Eigen::Vector3d quaternion_log(const Eigen::Quaterniond& q);

/// Logarithmic map on R^3 x S^3: (x2.p - x1.p; log(x1.q^-1 x2.q)).
/// The orientation part is expressed in the frame of x1.
Vector6d pose_log(const TaskPose& x1, const TaskPose& x2);

/// Same displacement with the orientation part in the base frame,
/// matching the angular rows of the geometric Jacobian.
Vector6d pose_log_world(const TaskPose& x1, const TaskPose& x2);

/// Geodesic distance 2 acos(|<qa, qb>|) between rotations, radians.
double orientation_distance(const Eigen::Quaterniond& qa, const Eigen::Quaterniond& qb);

/// J^T (J J^T + damping^2 I)^-1, computed through the SVD of J.
Eigen::MatrixXd damped_pseudo_inverse(const Eigen::MatrixXd& jacobian, double damping);

}  // namespace geosyn

#endif  // GEOSYN_POSE_HPP_
