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

#ifndef GEOSYN_GEOMETRY_HPP_
#define GEOSYN_GEOMETRY_HPP_

#include <Eigen/Dense>

#include "geosyn/metric.hpp"

namespace geosyn {

/// Velocity norms below this are treated as zero when an angle is needed.
inline constexpr double kNormFloor = 1e-12;

double inner_product(const MetricField& metric, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& u, const Eigen::VectorXd& v);

double riemannian_norm(const MetricField& metric, const Eigen::VectorXd& q,
                       const Eigen::VectorXd& v);

/// Angle in [0, pi] between u and v in the metric at q.
/// Throws ValidationError when either vector has norm below kNormFloor.
double angle(const MetricField& metric, const Eigen::VectorXd& q, const Eigen::VectorXd& u,
             const Eigen::VectorXd& v);

/// Same, with G(q) already evaluated.
double angle(const Eigen::MatrixXd& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

double kinetic_energy(const MetricField& metric, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qdot);

/// sum_jk Gamma_ijk a_j b_k, first-kind Christoffel symbols
/// Gamma_ijk = 1/2 (dg_ij/dq_k + dg_ik/dq_j - dg_jk/dq_i).
Eigen::VectorXd christoffel_contraction(const MetricEvaluation& eval, const Eigen::VectorXd& a,
                                        const Eigen::VectorXd& b);

/// c(q, qdot) = sum_jk Gamma_ijk qdot_j qdot_k.
Eigen::VectorXd coriolis_term(const MetricField& metric, const Eigen::VectorXd& q,
                              const Eigen::VectorXd& qdot);

/// qddot = -G(q)^-1 c(q, qdot).
Eigen::VectorXd geodesic_acceleration(const MetricField& metric, const Eigen::VectorXd& q,
                                      const Eigen::VectorXd& qdot);

/// Uniformly sampled path t_k = k * step with positions and velocities
/// stored one sample per row. Between samples the path is the cubic Hermite
/// spline through the sampled positions and velocities.
struct SampledCurve {
  double step = 1.0;
  Eigen::MatrixXd positions;
  Eigen::MatrixXd velocities;

  Eigen::Index size() const { return positions.rows(); }
  double duration() const { return step * static_cast<double>(size() - 1); }
  Eigen::VectorXd position(Eigen::Index k) const { return positions.row(k).transpose(); }
  Eigen::VectorXd velocity(Eigen::Index k) const { return velocities.row(k).transpose(); }

  /// Hermite interpolation; t is clamped to [0, duration()].
  Eigen::VectorXd position_at(double t) const;
  Eigen::VectorXd velocity_at(double t) const;

  /// Same path traversed backwards in time.
  SampledCurve reversed() const;
};

/// Solution of the geodesic equation on t in [0, 1].
struct GeodesicCurve {
  Eigen::VectorXd initial_point;
  Eigen::VectorXd initial_velocity;
  SampledCurve samples;

  Eigen::VectorXd endpoint() const { return samples.position(samples.size() - 1); }
  Eigen::VectorXd terminal_velocity() const { return samples.velocity(samples.size() - 1); }
};

/// Integrates the geodesic equation from (q0, v0) over [0, 1] with classical
/// RK4 at step 1/steps. Throws NumericalError on a non-finite state.
GeodesicCurve exp_map(const MetricField& metric, const Eigen::VectorXd& q0,
                      const Eigen::VectorXd& v0, int steps = 1000);

/// Endpoint of exp_map without storing the samples.
Eigen::VectorXd geodesic_endpoint(const MetricField& metric, const Eigen::VectorXd& q0,
                                  const Eigen::VectorXd& v0, int steps = 1000);

struct LogMapOptions {
  int steps = 1000;
  double tolerance = 1e-9;  // infinity norm of the endpoint residual, rad
  int max_iterations = 100;
  double fd_step = 1e-6;
  int sensitivity_steps = 100;  // RK4 steps for the finite-difference Jacobian
  int continuation_stages = 4;  // targets stepped along the chord; cap applies per stage
};

struct LogMapResult {
  Eigen::VectorXd velocity;
  double residual = 0.0;
  int iterations = 0;
};

/// Geodesic shooting for Exp_{q0}(v) = q1. Starts from v = q1 - q0 and takes
/// Gauss-Newton steps on a forward-difference endpoint sensitivity, halving
/// the step whenever the residual would grow. Throws ConvergenceError at the
/// iteration cap.
LogMapResult solve_log_map(const MetricField& metric, const Eigen::VectorXd& q0,
                           const Eigen::VectorXd& q1, const LogMapOptions& options = {});

Eigen::VectorXd log_map(const MetricField& metric, const Eigen::VectorXd& q0,
                        const Eigen::VectorXd& q1, const LogMapOptions& options = {});

/// One RK4 step of the transport equation G v' + Gamma(gamma', v) = 0 across
/// a curve interval of signed length h whose endpoint samples are given.
Eigen::VectorXd transport_step(const MetricField& metric, const Eigen::VectorXd& q_a,
                               const Eigen::VectorXd& qdot_a, const Eigen::VectorXd& q_b,
                               const Eigen::VectorXd& qdot_b, double h,
                               const Eigen::VectorXd& v);

/// Parallel transport of v from sample `from` to sample `to` (either order).
Eigen::VectorXd parallel_transport(const MetricField& metric, const SampledCurve& curve,
                                   const Eigen::VectorXd& v, Eigen::Index from,
                                   Eigen::Index to);

/// Transport from the first to the last sample.
Eigen::VectorXd parallel_transport(const MetricField& metric, const SampledCurve& curve,
                                   const Eigen::VectorXd& v);

/// Trapezoidal integral of the speed ||qdot||_q.
double curve_length(const MetricField& metric, const SampledCurve& curve);

/// Trapezoidal integral of the kinetic energy.
double curve_energy(const MetricField& metric, const SampledCurve& curve);

}  // namespace geosyn

#endif  // GEOSYN_GEOMETRY_HPP_
