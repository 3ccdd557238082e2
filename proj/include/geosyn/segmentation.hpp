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

#ifndef GEOSYN_SEGMENTATION_HPP_
#define GEOSYN_SEGMENTATION_HPP_

#include <Eigen/Dense>

#include "geosyn/metric.hpp"
#include "geosyn/trajectory.hpp"

namespace geosyn {

/// Savitzky-Golay differentiation: each sample's velocity is the analytic
/// derivative of the least-squares polynomial of order `poly_order` fitted
/// over `window` samples. Windows near the ends are shifted inwards so they
/// keep their full length.
JointTrajectory estimate_velocities(const JointTrajectory& traj, int window = 21,
                                    int poly_order = 2);

/// Savitzky-Golay derivative weights for a window whose evaluation point
/// sits `offset` samples from the window centre.
Eigen::VectorXd savitzky_golay_weights(int window, int poly_order, int offset);

inline constexpr double kSegmentationSpeedFloor = 1e-8;

struct RiemannianSegmentation {
  SegmentBoundaryList segments;
  /// Transported-angle per sample; NaN where no comparison was made.
  Eigen::VectorXd angles;
};

/// Velocity-direction segmentation on the configuration manifold. The
/// initial velocity of the current synergy is parallel transported along the
/// observed trajectory, one sample at a time, and compared with the observed
/// velocity. An angle above `delta_theta` closes the synergy at that sample
/// and opens the next one at the following sample.
RiemannianSegmentation segment_riemannian_trace(const MetricField& metric,
                                                const JointTrajectory& traj,
                                                double delta_theta = 0.1);

SegmentBoundaryList segment_riemannian(const MetricField& metric, const JointTrajectory& traj,
                                       double delta_theta = 0.1);

/// Baseline segmentation: a segment starts at the first velocity sign change
/// of a window of `window_seconds` in which more than `crossing_count`
/// distinct joints change sign.
SegmentBoundaryList segment_zero_velocity(const JointTrajectory& traj, int crossing_count = 3,
                                          double window_seconds = 0.05);

}  // namespace geosyn

#endif  // GEOSYN_SEGMENTATION_HPP_
