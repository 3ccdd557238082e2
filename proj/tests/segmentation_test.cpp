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
#include "geosyn/segmentation.hpp"
#include "geosyn/synthesis.hpp"
#include "test_support.hpp"

namespace geosyn {
namespace {

using testing::planar_three_link;
using testing::planar_two_link;
using testing::random_vector;

TEST(SavitzkyGolay, CentralQuadraticWeightsMatchTextbook) {
  // Five-point quadratic fit, first derivative at the centre: (-2, -1, 0, 1, 2) / 10.
  const Eigen::VectorXd w = savitzky_golay_weights(5, 2, 0);
  Eigen::VectorXd expected(5);
  expected << -0.2, -0.1, 0.0, 0.1, 0.2;
  EXPECT_LT((w - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SavitzkyGolay, OffsetWeightsDifferentiatePolynomialsExactly) {
  for (int offset = -3; offset <= 3; ++offset) {
    const Eigen::VectorXd w = savitzky_golay_weights(7, 3, offset);
    // Cubic with unit sample spacing; derivative at the evaluation point x = offset.
    double estimate = 0.0;
    for (int i = 0; i < 7; ++i) {
      const double x = i - 3;
      estimate += w[i] * (0.5 - x + 0.25 * x * x - 0.1 * x * x * x);
    }
    const double x0 = offset;
    EXPECT_NEAR(estimate, -1.0 + 0.5 * x0 - 0.3 * x0 * x0, 1e-12) << "offset " << offset;
  }
}

TEST(EstimateVelocities, ExactForQuadraticMotionIncludingEnds) {
  JointTrajectory traj;
  traj.dt = 0.02;
  traj.positions.resize(40, 2);
  for (int k = 0; k < 40; ++k) {
    const double t = k * traj.dt;
    traj.positions.row(k) << 1.0 + 2.0 * t - 3.0 * t * t, -0.5 * t + t * t;
  }
  const JointTrajectory out = estimate_velocities(traj, 21, 2);
  ASSERT_TRUE(out.has_velocities());
  for (int k = 0; k < 40; ++k) {
    const double t = k * traj.dt;
    EXPECT_NEAR(out.velocity(k)[0], 2.0 - 6.0 * t, 1e-10);
    EXPECT_NEAR(out.velocity(k)[1], -0.5 + 2.0 * t, 1e-10);
  }
}

TEST(EstimateVelocities, RejectsBadWindows) {
  JointTrajectory traj;
  traj.positions = Eigen::MatrixXd::Zero(10, 2);
  EXPECT_THROW(estimate_velocities(traj, 4, 2), ValidationError);
  EXPECT_THROW(estimate_velocities(traj, 21, 2), ValidationError);
  EXPECT_THROW(estimate_velocities(traj, 3, 3), ValidationError);
}

JointTrajectory with_velocities(const Eigen::MatrixXd& v, double dt) {
  JointTrajectory traj;
  traj.dt = dt;
  traj.positions = Eigen::MatrixXd::Zero(v.rows(), v.cols());
  traj.velocities = v;
  return traj;
}

TEST(ZeroVelocity, SplitsWhereMoreThanThreeJointsReverseTogether) {
  // Four joints reverse at samples 10..13, inside a 5-sample window.
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(30, 4);
  for (int j = 0; j < 4; ++j) v.block(10 + j, j, 30 - 10 - j, 1).setConstant(-1.0);
  const SegmentBoundaryList segs = segment_zero_velocity(with_velocities(v, 0.01));
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0], (Segment{0, 9}));
  EXPECT_EQ(segs[1], (Segment{10, 29}));
}

TEST(ZeroVelocity, ThreeJointsAreNotEnough) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(30, 4);
  for (int j = 0; j < 3; ++j) v.block(10 + j, j, 30 - 10 - j, 1).setConstant(-1.0);
  EXPECT_EQ(segment_zero_velocity(with_velocities(v, 0.01)).size(), 1u);
}

TEST(ZeroVelocity, CrossingsOutsideTheWindowDoNotCombine) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(40, 4);
  for (int j = 0; j < 3; ++j) v.block(10 + j, j, 40 - 10 - j, 1).setConstant(-1.0);
  v.block(16, 3, 24, 1).setConstant(-1.0);
  EXPECT_EQ(segment_zero_velocity(with_velocities(v, 0.01)).size(), 1u);
}

TEST(ZeroVelocity, ExactZerosAreSkippedWhenCountingSignChanges) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(30, 4);
  for (int j = 0; j < 4; ++j) {
    v(10, j) = 0.0;
    v.block(11, j, 19, 1).setConstant(-1.0);
  }
  const SegmentBoundaryList segs = segment_zero_velocity(with_velocities(v, 0.01));
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[1].first, 11);
}

TEST(Riemannian, SingleGeodesicIsOneSynergy) {
  const ChainMetric metric(planar_two_link());
  std::mt19937_64 rng(30);
  SynthesisOptions options;
  options.segments = 1;
  const SyntheticMotion motion =
      synthesize_piecewise_geodesic(metric, Eigen::Vector2d(0.2, 1.0), options, rng);
  const RiemannianSegmentation r = segment_riemannian_trace(metric, motion.trajectory, 0.1);
  ASSERT_EQ(r.segments.size(), 1u);
  EXPECT_EQ(r.angles.size(), motion.trajectory.samples());
  double max_angle = 0.0;
  for (Eigen::Index k = 0; k < r.angles.size(); ++k) {
    if (!std::isnan(r.angles[k])) max_angle = std::max(max_angle, r.angles[k]);
  }
  EXPECT_LT(max_angle, 1e-6);
}

TEST(Riemannian, RejectsThresholdOutsideOpenInterval) {
  const ChainMetric metric(planar_two_link());
  const JointTrajectory traj = with_velocities(Eigen::MatrixXd::Ones(10, 2), 0.01);
  EXPECT_THROW(segment_riemannian(metric, traj, 0.0), ValidationError);
  EXPECT_THROW(segment_riemannian(metric, traj, M_PI), ValidationError);
}

TEST(Riemannian, RecoversRestJunctionsToo) {
  const ChainMetric metric(planar_three_link());
  std::mt19937_64 rng(31);
  SynthesisOptions options;
  options.segments = 4;
  options.rest_junctions = true;
  const SyntheticMotion motion =
      synthesize_piecewise_geodesic(metric, random_vector(3, 1.0, rng), options, rng);
  const SegmentBoundaryList segs = segment_riemannian(metric, motion.trajectory, 0.1);
  ASSERT_EQ(segs.size(), 4u);
  for (std::size_t g = 1; g < segs.size(); ++g) {
    EXPECT_LE(std::abs(segs[g].first - motion.junctions[g - 1]), 2);
  }
}

TEST(RiemannianProperty, BoundariesPartitionTheMotion) {
  const ChainMetric metric(planar_three_link());
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    SynthesisOptions options;
    options.segments = 1 + trial % 5;
    const SyntheticMotion motion =
        synthesize_piecewise_geodesic(metric, random_vector(3, 1.0, rng), options, rng);
    const SegmentBoundaryList segs = segment_riemannian(metric, motion.trajectory, 0.1);
    EXPECT_NO_THROW(validate_boundaries(segs, motion.trajectory.samples()));
    EXPECT_EQ(segs.front().first, 0);
    EXPECT_EQ(segs.back().last, motion.trajectory.last());
    for (std::size_t g = 1; g < segs.size(); ++g) {
      EXPECT_EQ(segs[g].first, segs[g - 1].last + 1);
      EXPECT_GE(segs[g].last - segs[g].first + 1, 1);
    }
  }
}

TEST(RiemannianProperty, LargerThresholdNeverAddsSynergies) {
  const ChainMetric metric(planar_two_link());
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    SynthesisOptions options;
    options.segments = 3;
    const SyntheticMotion motion =
        synthesize_piecewise_geodesic(metric, random_vector(2, 1.0, rng), options, rng);
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (double threshold : {0.05, 0.1, 0.3, 1.0, 2.0}) {
      const std::size_t count = segment_riemannian(metric, motion.trajectory, threshold).size();
      EXPECT_LE(count, previous) << "threshold " << threshold;
      previous = count;
    }
  }
}

TEST(Boundaries, KnotsRoundTrip) {
  const SegmentBoundaryList segs = {{0, 9}, {10, 24}, {25, 40}};
  const std::vector<Eigen::Index> knots = synergy_knots(segs);
  EXPECT_EQ(knots, (std::vector<Eigen::Index>{0, 9, 24, 40}));
  EXPECT_EQ(segments_from_knots(knots), segs);
  EXPECT_THROW(validate_boundaries({{0, 9}, {11, 40}}, 41), ValidationError);
  EXPECT_THROW(validate_boundaries({{0, 9}, {10, 39}}, 41), ValidationError);
}

}  // namespace
}  // namespace geosyn
