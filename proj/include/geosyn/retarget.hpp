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

#ifndef GEOSYN_RETARGET_HPP_
#define GEOSYN_RETARGET_HPP_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geosyn/chain.hpp"
#include "geosyn/geometry.hpp"
#include "geosyn/metric.hpp"
#include "geosyn/pose.hpp"
#include "geosyn/synergy.hpp"
#include "geosyn/trajectory.hpp"

namespace geosyn {

/// Expresses poses in `shoulder` coordinates and scales positions by
/// target_arm_length / source_arm_length.
std::vector<TaskPose> scale_to_agent(const std::vector<TaskPose>& poses, double source_arm_length,
                                     double target_arm_length,
                                     const TaskPose& shoulder = TaskPose());

/// Greedy left-to-right merge of synergies whose joint-space chord between
/// their knots is shorter than `min_joint_distance`: a short synergy is
/// absorbed by its successor, or by its predecessor when it is the last one.
SegmentBoundaryList merge_synergies(const SegmentBoundaryList& boundaries,
                                    const JointTrajectory& traj, double min_joint_distance);

struct ShootOptions {
  int steps = 1000;
  double position_tolerance = 1e-3;     // m
  double orientation_tolerance = 1e-2;  // rad
  int max_iterations = 200;
  int max_backtracks = 20;
  double damping = 1e-4;
  double orientation_weight = 0.1;  // m / rad
};

struct ShootResult {
  Eigen::VectorXd initial_velocity;
  GeodesicCurve curve;
  TaskPose achieved;
  double residual_position = 0.0;
  double residual_orientation = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// F(v) = |dp|^2 + (w |dr|)^2 for the pose error between fk(Exp_{q0}(v))
/// and the target.
double shooting_objective(const KinematicModel& model, const MetricField& metric,
                          const Configuration& q0, const Eigen::VectorXd& v,
                          const TaskPose& target, const ShootOptions& options = {});

/// Approximate dF/dv: the weighted task error at the geodesic endpoint q1 is
/// pulled back through the damped pseudo-inverse Jacobian, parallel
/// transported from q1 to q0 along the geodesic, and scaled by -2.
Eigen::VectorXd shooting_gradient(const KinematicModel& model, const MetricField& metric,
                                  const Configuration& q0, const Eigen::VectorXd& v,
                                  const TaskPose& target, const ShootOptions& options = {});

/// Finds the initial velocity of a geodesic from q0 whose endpoint reaches
/// `target`, by descent along shooting_gradient with backtracking. Returns
/// the best iterate; `converged` tells whether the tolerances were met.
/// Throws NumericalError only on a non-finite gradient.
ShootResult shoot_synergy(const KinematicModel& model, const MetricField& metric,
                          const Configuration& q0, const TaskPose& target,
                          const ShootOptions& options = {});

/// Damped Newton pose IK from `seed`; returns the best configuration found.
Configuration solve_pose_ik(const KinematicModel& model, const TaskPose& target,
                            const Configuration& seed, int max_iterations = 200,
                            double damping = 1e-4);

struct RetargetOptions {
  ShootOptions shoot;
  double merge_threshold = 0.05;  // rad
  TaskPose shoulder;              // source shoulder pose in the source base frame
  std::optional<Configuration> initial_configuration;
};

struct SynergyTransfer {
  int index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  TaskPose desired;
  TaskPose achieved;
  double residual_position = 0.0;
  double residual_orientation = 0.0;
  int iterations = 0;
  bool converged = false;
  Eigen::VectorXd initial_velocity;
  double length = 0.0;
  TemporalProfile profile;
};

struct RetargetResult {
  Configuration start;
  std::vector<SynergyTransfer> synergies;
  JointTrajectory joints;
  std::vector<TaskPose> poses;
  std::vector<std::string> failures;
  SegmentBoundaryList merged;
};

/// Transfers a segmented motion of `source` onto `target`: key poses at the
/// synergy knots, scaled by arm length, each synergy shot as a geodesic of
/// the target chain from the previous endpoint, then timed with the
/// minimum-acceleration profile. Boundary speeds are the observed source
/// speeds rescaled by the ratio of target to source synergy lengths around
/// each knot, so consecutive synergies share their boundary speed.
RetargetResult retarget_motion(const KinematicModel& source, const JointTrajectory& traj,
                               const SegmentBoundaryList& segments, const KinematicModel& target,
                               const RetargetOptions& options = {});

}  // namespace geosyn

#endif  // GEOSYN_RETARGET_HPP_
