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

#ifndef GEOSYN_TRAJECTORY_HPP_
#define GEOSYN_TRAJECTORY_HPP_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "geosyn/geometry.hpp"

namespace geosyn {

/// Uniformly sampled joint motion, one sample per row (T + 1 rows, n columns).
struct JointTrajectory {
  double dt = 0.01;
  double start_time = 0.0;
  Eigen::MatrixXd positions;
  std::optional<Eigen::MatrixXd> velocities;

  Eigen::Index samples() const { return positions.rows(); }
  Eigen::Index dof() const { return positions.cols(); }
  Eigen::Index last() const { return samples() - 1; }
  double time(Eigen::Index k) const { return start_time + dt * static_cast<double>(k); }
  Eigen::VectorXd position(Eigen::Index k) const { return positions.row(k).transpose(); }
  Eigen::VectorXd velocity(Eigen::Index k) const;

  /// Throws ValidationError if dt, shapes or entries are invalid.
  void validate() const;
  bool has_velocities() const { return velocities.has_value(); }

  /// Samples [first, last] as a curve; velocities required.
  SampledCurve curve(Eigen::Index first, Eigen::Index last) const;
  SampledCurve curve() const { return curve(0, this->last()); }
};

/// One synergy as an inclusive sample range [first, last].
struct Segment {
  Eigen::Index first = 0;
  Eigen::Index last = 0;
  bool operator==(const Segment&) const = default;
};

/// Consecutive segments partitioning [0, T]: first of the next segment is
/// last of the previous plus one.
using SegmentBoundaryList = std::vector<Segment>;

/// Throws ValidationError unless `segments` partitions [0, samples - 1].
void validate_boundaries(const SegmentBoundaryList& segments, Eigen::Index samples);

/// Sample indices at which consecutive synergies are joined:
/// 0, last of segment 1, ..., last of segment G - 1, T.
/// Synergy g spans [knots[g], knots[g + 1]], so neighbours share a sample.
std::vector<Eigen::Index> synergy_knots(const SegmentBoundaryList& segments);

/// Inverse of synergy_knots.
SegmentBoundaryList segments_from_knots(const std::vector<Eigen::Index>& knots);

}  // namespace geosyn

#endif  // GEOSYN_TRAJECTORY_HPP_
