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

#include "geosyn/trajectory.hpp"

#include <cmath>
#include <string>

#include "geosyn/errors.hpp"

namespace geosyn {

Eigen::VectorXd JointTrajectory::velocity(Eigen::Index k) const {
  if (!velocities) throw ValidationError("trajectory has no velocities");
  return velocities->row(k).transpose();
}

void JointTrajectory::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("sample period must be positive");
  if (samples() == 0 || dof() == 0) throw ValidationError("trajectory is empty");
  if (!positions.allFinite()) throw ValidationError("trajectory has non-finite positions");
  if (velocities) {
    if (velocities->rows() != positions.rows() || velocities->cols() != positions.cols()) {
      throw ValidationError("velocity table shape does not match positions");
    }
    if (!velocities->allFinite()) throw ValidationError("trajectory has non-finite velocities");
  }
}

SampledCurve JointTrajectory::curve(Eigen::Index first, Eigen::Index last) const {
  if (!velocities) throw ValidationError("trajectory has no velocities");
  if (first < 0 || last < first || last >= samples()) {
    throw ValidationError("curve range out of bounds");
  }
  SampledCurve c;
  c.step = dt;
  c.positions = positions.middleRows(first, last - first + 1);
  c.velocities = velocities->middleRows(first, last - first + 1);
  return c;
}

void validate_boundaries(const SegmentBoundaryList& segments, Eigen::Index samples) {
  if (segments.empty()) throw ValidationError("segment list is empty");
  if (segments.front().first != 0) throw ValidationError("first segment must start at sample 0");
  if (segments.back().last != samples - 1) {
    throw ValidationError("last segment must end at the final sample");
  }
  for (std::size_t g = 0; g < segments.size(); ++g) {
    if (segments[g].last < segments[g].first) {
      throw ValidationError("segment " + std::to_string(g) + " is empty");
    }
    if (g > 0 && segments[g].first != segments[g - 1].last + 1) {
      throw ValidationError("segments " + std::to_string(g - 1) + " and " + std::to_string(g) +
                            " are not contiguous");
    }
  }
}

std::vector<Eigen::Index> synergy_knots(const SegmentBoundaryList& segments) {
  std::vector<Eigen::Index> knots;
  if (segments.empty()) return knots;
  knots.push_back(segments.front().first);
  for (const Segment& s : segments) knots.push_back(s.last);
  return knots;
}

SegmentBoundaryList segments_from_knots(const std::vector<Eigen::Index>& knots) {
  SegmentBoundaryList out;
  for (std::size_t g = 1; g < knots.size(); ++g) {
    out.push_back({g == 1 ? knots[0] : knots[g - 1] + 1, knots[g]});
  }
  return out;
}

}  // namespace geosyn
