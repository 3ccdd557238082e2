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

#ifndef GEOSYN_SYNERGY_HPP_
#define GEOSYN_SYNERGY_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geosyn/chain.hpp"
#include "geosyn/geometry.hpp"
#include "geosyn/metric.hpp"
#include "geosyn/trajectory.hpp"

namespace geosyn {

/// Minimum integrated squared acceleration time course s(t) on [0, T] with
/// s(0) = 0, s(T) = length, s'(0) = v_start, s'(T) = v_end. The minimiser
/// has s'''' = 0, so s is the cubic a0 + a1 t + a2 t^2 + a3 t^3.
struct TemporalProfile {
  double length = 0.0;
  double duration = 1.0;
  double v_start = 0.0;
  double v_end = 0.0;
  std::array<double, 4> coefficients{};
  /// False when s'(t) < 0 somewhere on [0, T].
  bool monotone = true;

  double position(double t) const;
  double speed(double t) const;
  double acceleration(double t) const;
  /// Integral of s''(t)^2 over [0, T].
  double cost() const;
  /// Smallest and largest s(t) on [0, T].
  std::pair<double, double> range() const;
};

/// Throws ValidationError if duration <= 0 or length / speeds are negative.
TemporalProfile temporal_profile(double length, double duration, double v_start, double v_end);

/// Boundary data of one synergy taken from an observed motion.
struct SynergyBoundary {
  int index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  Eigen::VectorXd q_start;
  Eigen::VectorXd q_end;
  double speed_start = 0.0;  // ||qdot|| at q_start in the planning metric
  double speed_end = 0.0;
};

struct SynergySegment {
  int index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  Eigen::VectorXd q_start;
  Eigen::VectorXd q_end;
  double speed_start = 0.0;
  double speed_end = 0.0;
  double length = 0.0;
  /// Initial velocity of the unit-time geodesic from q_start to q_end.
  Eigen::VectorXd geodesic_velocity;
  TemporalProfile profile;
};

struct PlannedSynergy {
  SynergySegment segment;
  /// Samples at t_start + k dt, k = 0..round((t_end - t_start) / dt).
  Eigen::MatrixXd positions;
  Eigen::MatrixXd velocities;
};

struct SynergyOptions {
  LogMapOptions log;
  int steps = 1000;
};

/// Samples q(s(t)) along the geodesic Exp_{q_start}(tau * geodesic_velocity),
/// tau = s / length. The geodesic is extended past [0, 1] when a
/// non-monotone profile leaves that range.
void sample_profiled_geodesic(const MetricField& metric, const Eigen::VectorXd& q_start,
                              const Eigen::VectorXd& geodesic_velocity, double length,
                              const TemporalProfile& profile, double dt, Eigen::Index count,
                              int steps, Eigen::MatrixXd& positions,
                              Eigen::MatrixXd& velocities);

/// Spatial geodesic via log_map, time course via temporal_profile.
PlannedSynergy plan_synergy(const MetricField& metric, const SynergyBoundary& boundary, double dt,
                            const SynergyOptions& options = {});

enum class ReconstructionMode { kRiemannian, kEuclidean, kIk };

std::string to_string(ReconstructionMode mode);
ReconstructionMode parse_mode(const std::string& text);

struct ReconstructedMotion {
  ReconstructionMode mode = ReconstructionMode::kRiemannian;
  JointTrajectory joints;
  std::vector<TaskPose> poses;  // filled when a kinematic model is available
  std::vector<SynergySegment> segments;
};

/// Piecewise-geodesic reconstruction of `traj` (velocities required). Synergy
/// g spans synergy_knots(boundaries)[g..g+1]. Riemannian mode plans in
/// `metric`; Euclidean mode plans straight joint-space lines with Euclidean
/// boundary speeds. Failures rethrow with the synergy index.
ReconstructedMotion reconstruct(const MetricField& metric, const JointTrajectory& traj,
                                const SegmentBoundaryList& boundaries, ReconstructionMode mode,
                                const SynergyOptions& options = {});

std::vector<TaskPose> pose_trajectory(const KinematicModel& model, const JointTrajectory& joints);

struct IkOptions {
  std::optional<double> gain;  // defaults to 1 / dt
  double damping = 1e-4;
  double divergence_position = 1.0;       // m
  double divergence_orientation = M_PI;   // rad
  double saturation_position = 1e-3;      // m
  double saturation_orientation = 1e-2;   // rad
};

struct IkReport {
  double max_position_error = 0.0;
  double max_orientation_error = 0.0;
  /// Tracking error exceeded the saturation thresholds at some sample.
  bool saturated = false;
};

/// Jacobian-based velocity controller: qdot = J^+(q) (gain * e), e the
/// base-frame pose error to the next target, integrated with step dt.
/// Throws NumericalError when the tracking error exceeds the divergence bounds.
ReconstructedMotion ik_track(const KinematicModel& model, const std::vector<TaskPose>& targets,
                             const Configuration& q0, double dt, const IkOptions& options = {},
                             IkReport* report = nullptr);

/// Mean absolute joint deviation over all samples and joints, radians.
double joint_error(const JointTrajectory& a, const JointTrajectory& b);

struct PoseErrors {
  double position = 0.0;     // mean distance, m
  double orientation = 0.0;  // mean rotation angle, rad
};

PoseErrors pose_error(const std::vector<TaskPose>& a, const std::vector<TaskPose>& b);

}  // namespace geosyn

#endif  // GEOSYN_SYNERGY_HPP_
