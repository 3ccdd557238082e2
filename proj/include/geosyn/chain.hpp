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

#ifndef GEOSYN_CHAIN_HPP_
#define GEOSYN_CHAIN_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace geosyn {

using Configuration = Eigen::VectorXd;
using Matrix6Xd = Eigen::Matrix<double, 6, Eigen::Dynamic>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Position plus unit-quaternion orientation. Stored in the hemisphere w >= 0.
struct TaskPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  TaskPose() = default;
  TaskPose(const Eigen::Vector3d& p, const Eigen::Quaterniond& q);

  Eigen::Isometry3d isometry() const;
  static TaskPose from_isometry(const Eigen::Isometry3d& t);
};

/// One rigid link driven by a revolute joint located at its frame origin.
struct Link {
  std::string name;
  int parent = -1;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d origin_xyz = Eigen::Vector3d::Zero();
  Eigen::Quaterniond origin_quat = Eigen::Quaterniond::Identity();
  double mass = 0.0;
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();  // about the COM, link frame

  Eigen::Isometry3d origin() const;
};

/// Serial chain of revolute joints with a fixed base. Immutable after load.
class KinematicModel {
 public:
  /// Validates every invariant; throws ValidationError naming the bad link.
  KinematicModel(std::string name, std::vector<Link> links, int end_effector,
                 Eigen::Isometry3d tool = Eigen::Isometry3d::Identity());

  const std::string& name() const { return name_; }
  int dof() const { return static_cast<int>(links_.size()); }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(int i) const { return links_.at(i); }
  int end_effector() const { return end_effector_; }
  /// Fixed offset from the end-effector link frame to the reported hand frame.
  const Eigen::Isometry3d& tool() const { return tool_; }

  /// Distance along the chain from the first joint to the hand frame
  /// (sum of joint-to-joint offsets plus the tool offset).
  double arm_length() const;

  void check_configuration(const Configuration& q) const;

 private:
  std::string name_;
  std::vector<Link> links_;
  int end_effector_;
  Eigen::Isometry3d tool_;
};

/// Parses the JSON model document.
KinematicModel load_model(std::string_view document);
KinematicModel load_model_file(const std::string& path);

/// World-frame joint frames for one configuration.
struct ChainState {
  std::vector<Eigen::Isometry3d> link_frames;
  std::vector<Eigen::Vector3d> joint_positions;
  std::vector<Eigen::Vector3d> joint_axes;
  Eigen::Isometry3d hand = Eigen::Isometry3d::Identity();
};

ChainState compute_chain_state(const KinematicModel& model, const Configuration& q);

TaskPose forward_kinematics(const KinematicModel& model, const Configuration& q);

/// 6 x n, rows (linear; angular) in the base frame, evaluated at the hand frame.
Matrix6Xd geometric_jacobian(const KinematicModel& model, const Configuration& q);

/// Joint-space mass-inertia matrix by the composite rigid body algorithm.
/// Throws NumericalError when the result is not positive definite.
Eigen::MatrixXd mass_matrix(const KinematicModel& model, const Configuration& q);

/// Slices dG/dq_k, k = 0..n-1.
std::vector<Eigen::MatrixXd> mass_matrix_derivatives(const KinematicModel& model,
                                                     const Configuration& q);

/// Mass matrix and its derivative slices from one kinematics pass.
void mass_matrix_with_derivatives(const KinematicModel& model, const Configuration& q,
                                  Eigen::MatrixXd& mass,
                                  std::vector<Eigen::MatrixXd>* derivatives);

}  // namespace geosyn

#endif  // GEOSYN_CHAIN_HPP_
