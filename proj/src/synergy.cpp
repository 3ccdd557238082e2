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

#include "geosyn/synergy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geosyn/errors.hpp"
#include "geosyn/pose.hpp"

namespace geosyn {

double TemporalProfile::position(double t) const {
  const auto& a = coefficients;
  return a[0] + t * (a[1] + t * (a[2] + t * a[3]));
}

double TemporalProfile::speed(double t) const {
  const auto& a = coefficients;
  return a[1] + t * (2.0 * a[2] + 3.0 * t * a[3]);
}

double TemporalProfile::acceleration(double t) const {
  return 2.0 * coefficients[2] + 6.0 * coefficients[3] * t;
}

double TemporalProfile::cost() const {
  const double a2 = coefficients[2];
  const double a3 = coefficients[3];
  const double t = duration;
  return 4.0 * a2 * a2 * t + 12.0 * a2 * a3 * t * t + 12.0 * a3 * a3 * t * t * t;
}

std::pair<double, double> TemporalProfile::range() const {
  double lo = std::min(position(0.0), position(duration));
  double hi = std::max(position(0.0), position(duration));
  // Roots of s'(t) = a1 + 2 a2 t + 3 a3 t^2 inside (0, T).
  const double a = 3.0 * coefficients[3];
  const double b = 2.0 * coefficients[2];
  const double c = coefficients[1];
  auto visit = [&](double t) {
    if (t > 0.0 && t < duration) {
      lo = std::min(lo, position(t));
      hi = std::max(hi, position(t));
    }
  };
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) > 1e-300) visit(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      visit((-b + r) / (2.0 * a));
      visit((-b - r) / (2.0 * a));
    }
  }
  return {lo, hi};
}

TemporalProfile temporal_profile(double length, double duration, double v_start, double v_end) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("temporal profile needs a positive duration");
  }
  if (!(length >= 0.0) || !(v_start >= 0.0) || !(v_end >= 0.0)) {
    throw ValidationError("temporal profile needs non-negative length and speeds");
  }
  TemporalProfile p;
  p.length = length;
  p.duration = duration;
  p.v_start = v_start;
  p.v_end = v_end;
  const double t = duration;
  p.coefficients = {0.0, v_start, (3.0 * length - (2.0 * v_start + v_end) * t) / (t * t),
                    (-2.0 * length + (v_start + v_end) * t) / (t * t * t)};
  // s' is a quadratic; its minimum on [0, T] is at an end or at its vertex.
  double min_speed = std::min(v_start, v_end);
  const double a3 = p.coefficients[3];
  if (a3 > 0.0) {
    const double vertex = -p.coefficients[2] / (3.0 * a3);
    if (vertex > 0.0 && vertex < t) min_speed = std::min(min_speed, p.speed(vertex));
  }
  p.monotone = min_speed >= 0.0;
  return p;
}

void sample_profiled_geodesic(const MetricField& metric, const Eigen::VectorXd& q_start,
                              const Eigen::VectorXd& geodesic_velocity, double length,
                              const TemporalProfile& profile, double dt, Eigen::Index count,
                              int steps, Eigen::MatrixXd& positions,
                              Eigen::MatrixXd& velocities) {
  const Eigen::Index n = q_start.size();
  positions.resize(count, n);
  velocities.resize(count, n);
  if (!(length > 0.0) || geodesic_velocity.isZero(0.0)) {
    positions.rowwise() = q_start.transpose();
    velocities.setZero();
    return;
  }
  const auto [s_lo, s_hi] = profile.range();
  const double tau_hi = std::max(1.0, s_hi / length);
  const double tau_lo = std::min(0.0, s_lo / length);
  const GeodesicCurve forward =
      exp_map(metric, q_start, geodesic_velocity * tau_hi,
              steps * static_cast<int>(std::ceil(tau_hi)));
  std::optional<GeodesicCurve> backward;
  if (tau_lo < 0.0) {
    backward = exp_map(metric, q_start, -geodesic_velocity * (-tau_lo),
                       steps * static_cast<int>(std::ceil(-tau_lo)));
  }
  for (Eigen::Index k = 0; k < count; ++k) {
    const double t = std::min(dt * static_cast<double>(k), profile.duration);
    const double tau = profile.position(t) / length;
    const double rate = profile.speed(t) / length;
    if (tau >= 0.0 || !backward) {
      const double u = std::max(tau, 0.0) / tau_hi;
      positions.row(k) = forward.samples.position_at(u).transpose();
      velocities.row(k) = (forward.samples.velocity_at(u) * (rate / tau_hi)).transpose();
    } else {
      const double u = tau / tau_lo;
      positions.row(k) = backward->samples.position_at(u).transpose();
      velocities.row(k) = (backward->samples.velocity_at(u) * (rate / tau_lo)).transpose();
    }
  }
}

PlannedSynergy plan_synergy(const MetricField& metric, const SynergyBoundary& boundary, double dt,
                            const SynergyOptions& options) {
  if (boundary.q_start.size() != metric.dof() || boundary.q_end.size() != metric.dof()) {
    throw ValidationError("synergy boundary configurations do not match the metric");
  }
  if (!(dt > 0.0)) throw ValidationError("sample period must be positive");
  const double duration = boundary.t_end - boundary.t_start;
  PlannedSynergy out;
  SynergySegment& seg = out.segment;
  seg.index = boundary.index;
  seg.t_start = boundary.t_start;
  seg.t_end = boundary.t_end;
  seg.q_start = boundary.q_start;
  seg.q_end = boundary.q_end;
  seg.speed_start = boundary.speed_start;
  seg.speed_end = boundary.speed_end;
  seg.geodesic_velocity = Eigen::VectorXd::Zero(metric.dof());
  if ((boundary.q_end - boundary.q_start).cwiseAbs().maxCoeff() > 0.0) {
    seg.geodesic_velocity =
        solve_log_map(metric, boundary.q_start, boundary.q_end, options.log).velocity;
    const GeodesicCurve curve = exp_map(metric, boundary.q_start, seg.geodesic_velocity,
                                        options.steps);
    seg.length = curve_length(metric, curve.samples);
  }
  seg.profile = temporal_profile(seg.length, duration, seg.speed_start, seg.speed_end);
  const Eigen::Index count = std::lround(duration / dt) + 1;
  sample_profiled_geodesic(metric, seg.q_start, seg.geodesic_velocity, seg.length, seg.profile,
                           dt, count, options.steps, out.positions, out.velocities);
  return out;
}

std::string to_string(ReconstructionMode mode) {
  switch (mode) {
    case ReconstructionMode::kRiemannian:
      return "riemannian";
    case ReconstructionMode::kEuclidean:
      return "euclidean";
    case ReconstructionMode::kIk:
      return "ik";
  }
  return "unknown";
}

ReconstructionMode parse_mode(const std::string& text) {
  if (text == "riemannian") return ReconstructionMode::kRiemannian;
  if (text == "euclidean") return ReconstructionMode::kEuclidean;
  if (text == "ik") return ReconstructionMode::kIk;
  throw ValidationError("unknown mode '" + text + "' (riemannian | euclidean | ik)");
}

ReconstructedMotion reconstruct(const MetricField& metric, const JointTrajectory& traj,
                                const SegmentBoundaryList& boundaries, ReconstructionMode mode,
                                const SynergyOptions& options) {
  traj.validate();
  if (!traj.has_velocities()) throw ValidationError("reconstruction needs velocities");
  if (traj.dof() != metric.dof()) throw ValidationError("trajectory and metric sizes differ");
  if (mode == ReconstructionMode::kIk) {
    throw ValidationError("IK reconstruction works on poses, use ik_track");
  }
  validate_boundaries(boundaries, traj.samples());

  const ConstantMetric euclidean = ConstantMetric::identity(metric.dof());
  const MetricField& plan_metric =
      mode == ReconstructionMode::kEuclidean ? static_cast<const MetricField&>(euclidean) : metric;
  const auto knots = synergy_knots(boundaries);

  ReconstructedMotion out;
  out.mode = mode;
  out.joints.dt = traj.dt;
  out.joints.start_time = traj.start_time;
  out.joints.positions.resize(traj.samples(), traj.dof());
  Eigen::MatrixXd velocities(traj.samples(), traj.dof());

  for (std::size_t g = 0; g + 1 < knots.size(); ++g) {
    const Eigen::Index a = knots[g];
    const Eigen::Index b = knots[g + 1];
    if (b <= a) throw ValidationError("synergy " + std::to_string(g) + " has zero duration");
    SynergyBoundary boundary;
    boundary.index = static_cast<int>(g);
    boundary.t_start = traj.time(a);
    boundary.t_end = traj.time(b);
    boundary.q_start = traj.position(a);
    boundary.q_end = traj.position(b);
    boundary.speed_start = riemannian_norm(plan_metric, boundary.q_start, traj.velocity(a));
    boundary.speed_end = riemannian_norm(plan_metric, boundary.q_end, traj.velocity(b));
    PlannedSynergy planned;
    try {
      planned = plan_synergy(plan_metric, boundary, traj.dt, options);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("synergy " + std::to_string(g) + ": " + e.what(), e.best_residual());
    } catch (const NumericalError& e) {
      throw NumericalError("synergy " + std::to_string(g) + ": " + e.what());
    }
    const Eigen::Index rows = std::min<Eigen::Index>(planned.positions.rows(), b - a + 1);
    out.joints.positions.middleRows(a, rows) = planned.positions.topRows(rows);
    velocities.middleRows(a, rows) = planned.velocities.topRows(rows);
    out.segments.push_back(std::move(planned.segment));
  }
  out.joints.velocities = std::move(velocities);
  return out;
}

std::vector<TaskPose> pose_trajectory(const KinematicModel& model, const JointTrajectory& joints) {
  std::vector<TaskPose> poses;
  poses.reserve(static_cast<std::size_t>(joints.samples()));
  for (Eigen::Index k = 0; k < joints.samples(); ++k) {
    poses.push_back(forward_kinematics(model, joints.position(k)));
  }
  return poses;
}

ReconstructedMotion ik_track(const KinematicModel& model, const std::vector<TaskPose>& targets,
                             const Configuration& q0, double dt, const IkOptions& options,
                             IkReport* report) {
  model.check_configuration(q0);
  if (targets.empty()) throw ValidationError("IK tracking needs at least one target pose");
  if (!(dt > 0.0)) throw ValidationError("sample period must be positive");
  const double gain = options.gain.value_or(1.0 / dt);
  const auto count = static_cast<Eigen::Index>(targets.size());
  const int n = model.dof();

  ReconstructedMotion out;
  out.mode = ReconstructionMode::kIk;
  out.joints.dt = dt;
  out.joints.positions.resize(count, n);
  Eigen::MatrixXd velocities = Eigen::MatrixXd::Zero(count, n);
  IkReport local;

  Eigen::VectorXd q = q0;
  out.joints.positions.row(0) = q.transpose();
  auto track_error = [&](const TaskPose& reached, const TaskPose& target) {
    const double ep = (target.position - reached.position).norm();
    const double eo = orientation_distance(target.orientation, reached.orientation);
    local.max_position_error = std::max(local.max_position_error, ep);
    local.max_orientation_error = std::max(local.max_orientation_error, eo);
    if (ep > options.saturation_position || eo > options.saturation_orientation) {
      local.saturated = true;
    }
    if (ep > options.divergence_position || eo > options.divergence_orientation ||
        !std::isfinite(ep) || !std::isfinite(eo)) {
      throw NumericalError("IK tracking diverged (position error " + std::to_string(ep) +
                           " m, orientation error " + std::to_string(eo) + " rad)");
    }
  };
  track_error(forward_kinematics(model, q), targets[0]);

  for (Eigen::Index k = 0; k + 1 < count; ++k) {
    const TaskPose current = forward_kinematics(model, q);
    const Vector6d error = pose_log_world(current, targets[k + 1]);
    const Eigen::MatrixXd pinv = damped_pseudo_inverse(geometric_jacobian(model, q),
                                                       options.damping);
    const Eigen::VectorXd qdot = pinv * (gain * error);
    q += qdot * dt;
    velocities.row(k) = qdot.transpose();
    out.joints.positions.row(k + 1) = q.transpose();
    track_error(forward_kinematics(model, q), targets[k + 1]);
  }
  if (count > 1) velocities.row(count - 1) = velocities.row(count - 2);
  out.joints.velocities = std::move(velocities);
  out.poses = pose_trajectory(model, out.joints);
  if (report) *report = local;
  return out;
}

double joint_error(const JointTrajectory& a, const JointTrajectory& b) {
  if (a.positions.rows() != b.positions.rows() || a.positions.cols() != b.positions.cols()) {
    throw ValidationError("joint_error: trajectories have different shapes");
  }
  if (a.positions.size() == 0) return 0.0;
  return (a.positions - b.positions).cwiseAbs().mean();
}

PoseErrors pose_error(const std::vector<TaskPose>& a, const std::vector<TaskPose>& b) {
  if (a.size() != b.size()) throw ValidationError("pose_error: sequences have different lengths");
  PoseErrors out;
  if (a.empty()) return out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.position += (a[k].position - b[k].position).norm();
    out.orientation += orientation_distance(a[k].orientation, b[k].orientation);
  }
  out.position /= static_cast<double>(a.size());
  out.orientation /= static_cast<double>(a.size());
  return out;
}

}  // namespace geosyn
