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

#include "geosyn/segmentation.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "geosyn/errors.hpp"
#include "geosyn/geometry.hpp"

namespace geosyn {

Eigen::VectorXd savitzky_golay_weights(int window, int poly_order, int offset) {
  const int half = window / 2;
  Eigen::MatrixXd vander(window, poly_order + 1);
  for (int r = 0; r < window; ++r) {
    const double x = static_cast<double>(r - half - offset);
    double p = 1.0;
    for (int c = 0; c <= poly_order; ++c, p *= x) vander(r, c) = p;
  }
  // Row 1 of the pseudo-inverse maps samples to the linear coefficient,
  // which is the derivative at x = 0.
  const Eigen::MatrixXd pinv =
      vander.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(window, window));
  return pinv.row(1).transpose();
}

JointTrajectory estimate_velocities(const JointTrajectory& traj, int window, int poly_order) {
  traj.validate();
  if (window % 2 == 0 || window < 1) throw ValidationError("window length must be odd");
  if (poly_order < 1) throw ValidationError("polynomial order must be at least 1");
  if (window < poly_order + 1) {
    throw ValidationError("window length must exceed the polynomial order");
  }
  if (traj.samples() < window) {
    throw ValidationError("trajectory has " + std::to_string(traj.samples()) +
                          " samples, shorter than the window of " + std::to_string(window));
  }
  const Eigen::Index n = traj.samples();
  const int half = window / 2;
  std::map<int, Eigen::VectorXd> weights;
  Eigen::MatrixXd vel(n, traj.dof());
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index start = std::clamp<Eigen::Index>(k - half, 0, n - window);
    const int offset = static_cast<int>(k - (start + half));
    auto it = weights.find(offset);
    if (it == weights.end()) {
      it = weights.emplace(offset, savitzky_golay_weights(window, poly_order, offset)).first;
    }
    // Derivative weights sum to zero, so differencing against the evaluation
    // sample leaves the estimate unchanged and makes constant input exactly still.
    const Eigen::MatrixXd local =
        traj.positions.middleRows(start, window).rowwise() - traj.positions.row(k);
    vel.row(k) = it->second.transpose() * local / traj.dt;
  }
  JointTrajectory out = traj;
  out.velocities = std::move(vel);
  return out;
}

RiemannianSegmentation segment_riemannian_trace(const MetricField& metric,
                                                const JointTrajectory& traj,
                                                double delta_theta) {
  traj.validate();
  if (!traj.has_velocities()) throw ValidationError("segmentation needs velocities");
  if (traj.samples() < 2) throw ValidationError("trajectory too short to segment");
  if (traj.dof() != metric.dof()) throw ValidationError("trajectory and metric sizes differ");
  if (!(delta_theta > 0.0 && delta_theta < M_PI)) {
    throw ValidationError("delta_theta must lie in (0, pi)");
  }
  const Eigen::Index last = traj.last();
  RiemannianSegmentation out;
  out.angles = Eigen::VectorXd::Constant(traj.samples(), std::numeric_limits<double>::quiet_NaN());

  auto moving = [&](Eigen::Index k) {
    return riemannian_norm(metric, traj.position(k), traj.velocity(k)) >= kSegmentationSpeedFloor;
  };

  Eigen::Index start = 0;
  Eigen::VectorXd reference = traj.velocity(0);
  bool has_reference = moving(0);
  if (has_reference) out.angles[0] = 0.0;

  for (Eigen::Index t = 1; t <= last; ++t) {
    const Eigen::VectorXd v = traj.velocity(t);
    if (!has_reference) {
      // The synergy began at rest; its direction is the first nonzero velocity.
      if (moving(t)) {
        reference = v;
        has_reference = true;
        out.angles[t] = 0.0;
      }
      continue;
    }
    reference = transport_step(metric, traj.position(t - 1), traj.velocity(t - 1),
                               traj.position(t), v, traj.dt, reference);
    if (!moving(t)) continue;
    const Eigen::MatrixXd g = metric.metric(traj.position(t));
    const double theta = angle(g, reference, v);
    out.angles[t] = theta;
    // A split needs room for a following segment of at least two samples.
    if (theta > delta_theta && t + 2 <= last) {
      out.segments.push_back({start, t});
      start = t + 1;
      ++t;
      reference = traj.velocity(t);
      has_reference = moving(t);
      if (has_reference) out.angles[t] = 0.0;
    }
  }
  out.segments.push_back({start, last});
  return out;
}

SegmentBoundaryList segment_riemannian(const MetricField& metric, const JointTrajectory& traj,
                                       double delta_theta) {
  return segment_riemannian_trace(metric, traj, delta_theta).segments;
}

SegmentBoundaryList segment_zero_velocity(const JointTrajectory& traj, int crossing_count,
                                          double window_seconds) {
  traj.validate();
  if (!traj.has_velocities()) throw ValidationError("segmentation needs velocities");
  const auto window = static_cast<Eigen::Index>(std::lround(window_seconds / traj.dt));
  if (window < 2) throw ValidationError("zero-velocity window shorter than 2 samples");
  const Eigen::MatrixXd& vel = *traj.velocities;
  const Eigen::Index last = traj.last();

  // (sample, joint) for every sign change, ordered by sample.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> crossings;
  std::vector<int> last_sign(traj.dof(), 0);
  for (Eigen::Index t = 0; t <= last; ++t) {
    for (Eigen::Index j = 0; j < traj.dof(); ++j) {
      const double v = vel(t, j);
      const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
      if (s == 0) continue;
      if (last_sign[j] != 0 && s != last_sign[j]) crossings.emplace_back(t, j);
      last_sign[j] = s;
    }
  }

  SegmentBoundaryList out;
  Eigen::Index start = 0;
  Eigen::Index blocked_until = -1;
  for (std::size_t e = 0; e < crossings.size(); ++e) {
    const Eigen::Index s = crossings[e].first;
    if (s <= blocked_until) continue;
    std::set<Eigen::Index> joints;
    for (std::size_t f = e; f < crossings.size() && crossings[f].first < s + window; ++f) {
      joints.insert(crossings[f].second);
    }
    if (static_cast<int>(joints.size()) <= crossing_count) continue;
    blocked_until = s + window - 1;
    if (s < start + 2 || s + 1 > last) continue;
    out.push_back({start, s - 1});
    start = s;
  }
  out.push_back({start, last});
  return out;
}

}  // namespace geosyn
