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

#include "geosyn/retarget.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "geosyn/errors.hpp"

namespace geosyn {

namespace {

Vector6d task_weights(const ShootOptions& options) {
  Vector6d w;
  w << 1.0, 1.0, 1.0, options.orientation_weight, options.orientation_weight,
      options.orientation_weight;
  return w;
}

struct Evaluation {
  GeodesicCurve curve;
  TaskPose achieved;
  Vector6d error;  // base-frame (dp; dr), unweighted
  double objective = 0.0;
};

Evaluation evaluate(const KinematicModel& model, const MetricField& metric,
                    const Configuration& q0, const Eigen::VectorXd& v, const TaskPose& target,
                    const ShootOptions& options) {
  Evaluation e;
  e.curve = exp_map(metric, q0, v, options.steps);
  e.achieved = forward_kinematics(model, e.curve.endpoint());
  e.error = pose_log_world(e.achieved, target);
  e.objective = (task_weights(options).asDiagonal() * e.error).squaredNorm();
  return e;
}

// Joint-space change that removes the weighted task error at the endpoint.
Eigen::VectorXd pull_back(const KinematicModel& model, const Configuration& q,
                          const Vector6d& error, const ShootOptions& options) {
  const Vector6d w = task_weights(options);
  const Eigen::MatrixXd weighted_jacobian = w.asDiagonal() * geometric_jacobian(model, q);
  return damped_pseudo_inverse(weighted_jacobian, options.damping) *
         (w.asDiagonal() * error);
}

Eigen::VectorXd descent_direction(const KinematicModel& model, const MetricField& metric,
                                  const Evaluation& e, const ShootOptions& options) {
  const Eigen::VectorXd change = pull_back(model, e.curve.endpoint(), e.error, options);
  return parallel_transport(metric, e.curve.samples, change, e.curve.samples.size() - 1, 0);
}

bool reached(const Evaluation& e, const ShootOptions& options) {
  return e.error.head<3>().norm() < options.position_tolerance &&
         e.error.tail<3>().norm() < options.orientation_tolerance;
}

}  // namespace

std::vector<TaskPose> scale_to_agent(const std::vector<TaskPose>& poses, double source_arm_length,
                                     double target_arm_length, const TaskPose& shoulder) {
  if (!(source_arm_length > 0.0) || !(target_arm_length > 0.0)) {
    throw ValidationError("arm lengths must be positive");
  }
  const double ratio = target_arm_length / source_arm_length;
  const Eigen::Matrix3d r = shoulder.orientation.toRotationMatrix();
  std::vector<TaskPose> out;
  out.reserve(poses.size());
  for (const TaskPose& p : poses) {
    out.emplace_back(ratio * (r.transpose() * (p.position - shoulder.position)),
                     shoulder.orientation.conjugate() * p.orientation);
  }
  return out;
}

SegmentBoundaryList merge_synergies(const SegmentBoundaryList& boundaries,
                                    const JointTrajectory& traj, double min_joint_distance) {
  if (!(min_joint_distance >= 0.0)) throw ValidationError("merge threshold must be >= 0");
  validate_boundaries(boundaries, traj.samples());
  std::vector<Eigen::Index> knots = synergy_knots(boundaries);
  auto chord = [&](std::size_t g) {
    return (traj.position(knots[g + 1]) - traj.position(knots[g])).norm();
  };
  while (knots.size() > 2) {
    const std::size_t count = knots.size() - 1;
    std::size_t g = 0;
    while (g < count && chord(g) >= min_joint_distance) ++g;
    if (g == count) break;
    if (g + 1 < count) {
      knots.erase(knots.begin() + static_cast<std::ptrdiff_t>(g + 1));
    } else {
      knots.erase(knots.begin() + static_cast<std::ptrdiff_t>(g));
    }
  }
  return segments_from_knots(knots);
}

double shooting_objective(const KinematicModel& model, const MetricField& metric,
                          const Configuration& q0, const Eigen::VectorXd& v,
                          const TaskPose& target, const ShootOptions& options) {
  return evaluate(model, metric, q0, v, target, options).objective;
}

Eigen::VectorXd shooting_gradient(const KinematicModel& model, const MetricField& metric,
                                  const Configuration& q0, const Eigen::VectorXd& v,
                                  const TaskPose& target, const ShootOptions& options) {
  const Evaluation e = evaluate(model, metric, q0, v, target, options);
  return -2.0 * descent_direction(model, metric, e, options);
}

ShootResult shoot_synergy(const KinematicModel& model, const MetricField& metric,
                          const Configuration& q0, const TaskPose& target,
                          const ShootOptions& options) {
  model.check_configuration(q0);
  if (metric.dof() != model.dof()) throw ValidationError("metric and model sizes differ");

  // v = 0 gives Exp = q0, so the first step is the pseudo-inverse pull-back
  // of the task error at q0.
  Eigen::VectorXd v = Eigen::VectorXd::Zero(model.dof());
  Evaluation best = evaluate(model, metric, q0, v, target, options);
  int iterations = 0;
  while (iterations < options.max_iterations && !reached(best, options)) {
    const Eigen::VectorXd direction = descent_direction(model, metric, best, options);
    if (!direction.allFinite()) throw NumericalError("shoot_synergy: non-finite gradient");
    bool accepted = false;
    double step = 1.0;
    for (int b = 0; b < options.max_backtracks; ++b, step *= 0.5) {
      const Eigen::VectorXd trial = v + step * direction;
      try {
        Evaluation e = evaluate(model, metric, q0, trial, target, options);
        if (e.objective < best.objective) {
          v = trial;
          best = std::move(e);
          accepted = true;
          break;
        }
      } catch (const NumericalError&) {
        // Step left the region where the geodesic can be integrated.
      }
    }
    if (!accepted) break;
    ++iterations;
  }

  ShootResult out;
  out.initial_velocity = v;
  out.curve = std::move(best.curve);
  out.achieved = best.achieved;
  out.residual_position = best.error.head<3>().norm();
  out.residual_orientation = best.error.tail<3>().norm();
  out.iterations = iterations;
  out.converged = out.residual_position < options.position_tolerance &&
                  out.residual_orientation < options.orientation_tolerance;
  return out;
}

Configuration solve_pose_ik(const KinematicModel& model, const TaskPose& target,
                            const Configuration& seed, int max_iterations, double damping) {
  model.check_configuration(seed);
  Configuration q = seed;
  Configuration best = seed;
  double best_error = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= max_iterations; ++it) {
    const Vector6d e = pose_log_world(forward_kinematics(model, q), target);
    const double err = e.norm();
    if (err < best_error) {
      best_error = err;
      best = q;
    }
    if (err < 1e-12 || it == max_iterations) break;
    q += damped_pseudo_inverse(geometric_jacobian(model, q), damping) * e;
  }
  return best;
}

RetargetResult retarget_motion(const KinematicModel& source, const JointTrajectory& traj,
                               const SegmentBoundaryList& segments, const KinematicModel& target,
                               const RetargetOptions& options) {
  traj.validate();
  if (!traj.has_velocities()) throw ValidationError("retargeting needs source velocities");
  if (traj.dof() != source.dof()) throw ValidationError("trajectory does not match source model");
  validate_boundaries(segments, traj.samples());

  RetargetResult out;
  out.merged = merge_synergies(segments, traj, options.merge_threshold);
  const auto knots = synergy_knots(out.merged);
  const std::size_t count = knots.size() - 1;

  std::vector<TaskPose> human_keys;
  for (const auto k : knots) human_keys.push_back(forward_kinematics(source, traj.position(k)));
  const std::vector<TaskPose> keys =
      scale_to_agent(human_keys, source.arm_length(), target.arm_length(), options.shoulder);

  const ChainMetric source_metric(source);
  const ChainMetric target_metric(target);

  if (options.initial_configuration) {
    target.check_configuration(*options.initial_configuration);
    out.start = *options.initial_configuration;
  } else {
    const Configuration seed = target.dof() == source.dof()
                                   ? Configuration(traj.position(0))
                                   : Configuration(Configuration::Zero(target.dof()));
    out.start = solve_pose_ik(target, keys.front(), seed);
  }

  std::vector<GeodesicCurve> curves;
  std::vector<double> robot_lengths;
  std::vector<double> human_lengths;
  Configuration q = out.start;
  for (std::size_t g = 0; g < count; ++g) {
    SynergyTransfer s;
    s.index = static_cast<int>(g);
    s.t_start = traj.time(knots[g]);
    s.t_end = traj.time(knots[g + 1]);
    s.desired = keys[g + 1];
    bool failed = false;
    try {
      ShootResult r = shoot_synergy(target, target_metric, q, keys[g + 1], options.shoot);
      s.achieved = r.achieved;
      s.residual_position = r.residual_position;
      s.residual_orientation = r.residual_orientation;
      s.iterations = r.iterations;
      s.converged = r.converged;
      s.initial_velocity = r.initial_velocity;
      curves.push_back(std::move(r.curve));
    } catch (const NumericalError& e) {
      out.failures.push_back("synergy " + std::to_string(g) + ": " + e.what());
      failed = true;
      s.initial_velocity = Eigen::VectorXd::Zero(target.dof());
      curves.push_back(exp_map(target_metric, q, s.initial_velocity, 1));
      s.achieved = forward_kinematics(target, q);
      const Vector6d err = pose_log_world(s.achieved, s.desired);
      s.residual_position = err.head<3>().norm();
      s.residual_orientation = err.tail<3>().norm();
    }
    if (!s.converged && !failed) {
      out.failures.push_back("synergy " + std::to_string(g) + ": not converged (residual " +
                             std::to_string(s.residual_position) + " m, " +
                             std::to_string(s.residual_orientation) + " rad)");
    }
    s.length = curve_length(target_metric, curves.back().samples);
    robot_lengths.push_back(s.length);
    human_lengths.push_back(curve_length(source_metric, traj.curve(knots[g], knots[g + 1])));
    q = curves.back().endpoint();
    out.synergies.push_back(std::move(s));
  }

  // One boundary speed per knot keeps the speed continuous across synergies.
  std::vector<double> knot_speed(knots.size(), 0.0);
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const double human_speed =
        riemannian_norm(source_metric, traj.position(knots[k]), traj.velocity(knots[k]));
    double robot_len = 0.0;
    double human_len = 0.0;
    if (k > 0) {
      robot_len += robot_lengths[k - 1];
      human_len += human_lengths[k - 1];
    }
    if (k < count) {
      robot_len += robot_lengths[k];
      human_len += human_lengths[k];
    }
    knot_speed[k] = human_len > 0.0 ? human_speed * robot_len / human_len : 0.0;
  }

  out.joints.dt = traj.dt;
  out.joints.start_time = traj.start_time;
  out.joints.positions.resize(traj.samples(), target.dof());
  Eigen::MatrixXd velocities(traj.samples(), target.dof());
  for (std::size_t g = 0; g < count; ++g) {
    SynergyTransfer& s = out.synergies[g];
    s.profile = temporal_profile(s.length, s.t_end - s.t_start, knot_speed[g], knot_speed[g + 1]);
    const Eigen::Index a = knots[g];
    const Eigen::Index rows = knots[g + 1] - a + 1;
    Eigen::MatrixXd pos;
    Eigen::MatrixXd vel;
    sample_profiled_geodesic(target_metric, curves[g].initial_point, s.initial_velocity, s.length,
                             s.profile, traj.dt, rows, options.shoot.steps, pos, vel);
    out.joints.positions.middleRows(a, rows) = pos;
    velocities.middleRows(a, rows) = vel;
  }
  out.joints.velocities = std::move(velocities);
  out.poses = pose_trajectory(target, out.joints);
  return out;
}

}  // namespace geosyn
