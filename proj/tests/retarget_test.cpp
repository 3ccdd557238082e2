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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "geosyn/errors.hpp"
#include "geosyn/metric.hpp"
#include "geosyn/pose.hpp"
#include "geosyn/retarget.hpp"
#include "geosyn/segmentation.hpp"
#include "geosyn/synthesis.hpp"
#include "test_support.hpp"

namespace geosyn {
namespace {

using testing::planar_three_link;
using testing::planar_two_link;
using testing::random_vector;

TEST(ScaleToAgent, ScalesPositionsAboutTheShoulder) {
  const Eigen::Quaterniond spin(Eigen::AngleAxisd(0.5, Eigen::Vector3d::UnitZ()));
  const std::vector<TaskPose> poses = {TaskPose(Eigen::Vector3d(1, 2, 3), spin)};
  const std::vector<TaskPose> same = scale_to_agent(poses, 2.0, 3.0);
  EXPECT_TRUE(same[0].position.isApprox(Eigen::Vector3d(1.5, 3.0, 4.5)));
  EXPECT_NEAR(orientation_distance(same[0].orientation, spin), 0.0, 1e-7);

  const TaskPose shoulder(Eigen::Vector3d(1, 0, 0),
                          Eigen::Quaterniond(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitZ())));
  const std::vector<TaskPose> local = scale_to_agent(poses, 1.0, 1.0, shoulder);
  // (0, 2, 3) seen from a frame rotated +90 deg about z is (2, 0, 3).
  EXPECT_LT((local[0].position - Eigen::Vector3d(2, 0, 3)).norm(), 1e-12);
  EXPECT_THROW(scale_to_agent(poses, 0.0, 1.0), ValidationError);
}

TEST(ScaleToAgent, TranslatedShoulderMatchesFrameComposition) {
  Eigen::Isometry3d shoulder = Eigen::Isometry3d::Identity();
  shoulder.translation() = Eigen::Vector3d(0.1, 0.0, 0.0);
  const TaskPose pose(Eigen::Vector3d(0.7, -0.2, 0.4),
                      Eigen::Quaterniond(Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitY())));
  const TaskPose out = scale_to_agent({pose}, 1.0, 1.0, TaskPose::from_isometry(shoulder))[0];
  const Eigen::Isometry3d expected = shoulder.inverse() * pose.isometry();
  EXPECT_LT((out.position - expected.translation()).norm(), 1e-15);
  EXPECT_LT((out.position - Eigen::Vector3d(0.6, -0.2, 0.4)).norm(), 1e-15);
  EXPECT_NEAR(orientation_distance(out.orientation, pose.orientation), 0.0, 1e-7);
}

JointTrajectory knot_trajectory(const std::vector<double>& values) {
  JointTrajectory traj;
  traj.positions = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t k = 0; k < values.size(); ++k) traj.positions(k, 0) = values[k];
  return traj;
}

TEST(MergeSynergies, HandSimulatedExample) {
  // Knots 0, 2, 4, 6, 8 with joint values 0, 0.01, 1, 1.02, 2.
  // Chords: 0.01 (short), 0.99, 0.02 (short), 0.98.
  // First short chord (g=0) merges forward: knots 0, 4, 6, 8.
  // Next short chord (4 -> 6) merges forward: knots 0, 4, 8.
  const JointTrajectory traj = knot_trajectory({0, 0, 0.01, 0.5, 1.0, 1.0, 1.02, 1.5, 2.0});
  const SegmentBoundaryList segs = {{0, 2}, {3, 4}, {5, 6}, {7, 8}};
  const SegmentBoundaryList merged = merge_synergies(segs, traj, 0.05);
  EXPECT_EQ(synergy_knots(merged), (std::vector<Eigen::Index>{0, 4, 8}));
}

TEST(MergeSynergies, ShortLastSynergyJoinsItsPredecessor) {
  const JointTrajectory traj = knot_trajectory({0, 0.5, 1.0, 1.0, 1.01});
  const SegmentBoundaryList merged = merge_synergies({{0, 2}, {3, 4}}, traj, 0.05);
  EXPECT_EQ(synergy_knots(merged), (std::vector<Eigen::Index>{0, 4}));
}

TEST(MergeSynergies, ZeroThresholdKeepsEverything) {
  const JointTrajectory traj = knot_trajectory({0, 0, 0, 0});
  const SegmentBoundaryList segs = {{0, 1}, {2, 3}};
  EXPECT_EQ(merge_synergies(segs, traj, 0.0), segs);
  EXPECT_THROW(merge_synergies(segs, traj, -1.0), ValidationError);
}

TEST(Shooting, ReachesPoseOfANearbyConfiguration) {
  const KinematicModel model = planar_three_link();
  const ChainMetric metric(model);
  const Eigen::Vector3d q0(0.2, 0.9, -0.4);
  const TaskPose target = forward_kinematics(model, Eigen::Vector3d(0.6, 0.5, 0.1));
  const ShootResult r = shoot_synergy(model, metric, q0, target);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.residual_position, 1e-3);
  EXPECT_LT(r.residual_orientation, 1e-2);
  EXPECT_LE(r.iterations, 200);
  EXPECT_LT((forward_kinematics(model, r.curve.endpoint()).position - target.position).norm(),
            1e-3);
}

TEST(Shooting, ObjectiveWeightsOrientation) {
  const KinematicModel model = planar_two_link();
  const ChainMetric metric(model);
  const Eigen::Vector2d q0(0.3, 0.8);
  const TaskPose here = forward_kinematics(model, q0);
  // Target differs only by a 0.5 rad rotation: F = (0.1 * 0.5)^2.
  const TaskPose target(here.position,
                        Eigen::Quaterniond(Eigen::AngleAxisd(0.5, Eigen::Vector3d::UnitZ())) *
                            here.orientation);
  EXPECT_NEAR(shooting_objective(model, metric, q0, Eigen::Vector2d::Zero(), target), 0.0025,
              1e-12);
}

TEST(Shooting, UnreachableTargetDoesNotConverge) {
  const KinematicModel model = planar_two_link();
  const ChainMetric metric(model);
  ShootOptions options;
  options.max_iterations = 30;
  const TaskPose far(Eigen::Vector3d(5, 0, 0), Eigen::Quaterniond::Identity());
  const ShootResult r = shoot_synergy(model, metric, Eigen::Vector2d(0.3, 0.5), far, options);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.residual_position, 2.9);
}

TEST(Shooting, TargetAtStartNeedsNoIterations) {
  const KinematicModel model = planar_two_link();
  const Eigen::Vector2d q0(0.4, 1.0);
  const ShootResult r = shoot_synergy(model, ChainMetric(model), q0, forward_kinematics(model, q0));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.initial_velocity, Eigen::Vector2d::Zero());
  EXPECT_LT(r.residual_position, 1e-15);
}

TEST(Shooting, TargetJustOutsideWorkspaceLeavesTheGap) {
  // Radius l1 + l2 = 2; a target at 2.1 m stays 0.1 m away at best.
  const KinematicModel model = planar_two_link();
  const TaskPose target(Eigen::Vector3d(2.1 * std::cos(0.5), 2.1 * std::sin(0.5), 0.0),
                        Eigen::Quaterniond(Eigen::AngleAxisd(0.5, Eigen::Vector3d::UnitZ())));
  const ShootResult r =
      shoot_synergy(model, ChainMetric(model), Eigen::Vector2d(0.3, 0.6), target);
  EXPECT_FALSE(r.converged);
  EXPECT_NEAR(r.residual_position, 0.1, 2e-3);
}

TEST(PoseIk, SolvesReachableTarget) {
  const KinematicModel model = planar_three_link();
  const TaskPose target = forward_kinematics(model, Eigen::Vector3d(-0.3, 1.1, 0.5));
  const Configuration q = solve_pose_ik(model, target, Eigen::Vector3d(0.0, 0.5, 0.5));
  EXPECT_LT(pose_log_world(forward_kinematics(model, q), target).norm(), 1e-9);
}

TEST(RetargetMotion, TwoLinkToThreeLinkReproducesKeyPoses) {
  const KinematicModel two = planar_two_link();
  const KinematicModel three = planar_three_link();
  const ChainMetric metric(two);
  std::mt19937_64 rng(60);
  SynthesisOptions options;
  options.segments = 3;
  options.max_turn = 0.8;
  const SyntheticMotion motion =
      synthesize_piecewise_geodesic(metric, Eigen::Vector2d(0.2, 1.4), options, rng);
  const SegmentBoundaryList segs = segment_riemannian(metric, motion.trajectory, 0.1);
  const RetargetResult r = retarget_motion(two, motion.trajectory, segs, three);
  EXPECT_TRUE(r.failures.empty());
  ASSERT_EQ(r.joints.samples(), motion.trajectory.samples());
  EXPECT_EQ(r.joints.dof(), 3);
  for (const SynergyTransfer& s : r.synergies) {
    EXPECT_TRUE(s.converged) << "synergy " << s.index;
    EXPECT_LT((s.achieved.position - s.desired.position).norm(), 1e-3);
  }
  const std::vector<Eigen::Index> knots = synergy_knots(r.merged);
  const std::vector<TaskPose> desired =
      scale_to_agent(pose_trajectory(two, motion.trajectory), two.arm_length(), three.arm_length());
  for (std::size_t g = 1; g < knots.size(); ++g) {
    EXPECT_LT((r.poses[knots[g]].position - desired[knots[g]].position).norm(), 1e-3);
  }
}

}  // namespace
}  // namespace geosyn
