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

#include "geosyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "geosyn/errors.hpp"

namespace geosyn {

namespace {

void check_size(const MetricField& metric, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != metric.dof()) {
    throw ValidationError(std::string(what) + " has " + std::to_string(v.size()) +
                          " entries, expected " + std::to_string(metric.dof()));
  }
}

Eigen::VectorXd acceleration(const MetricEvaluation& eval, const Eigen::VectorXd& qdot) {
  const Eigen::VectorXd c = christoffel_contraction(eval, qdot, qdot);
  return -eval.metric.ldlt().solve(c);
}

Eigen::VectorXd transport_rate(const MetricEvaluation& eval, const Eigen::VectorXd& curve_velocity,
                               const Eigen::VectorXd& v) {
  return -eval.metric.ldlt().solve(christoffel_contraction(eval, curve_velocity, v));
}

// Cubic Hermite on one interval parametrised by tau in [0, 1], signed length h.
Eigen::VectorXd hermite_position(const Eigen::VectorXd& p0, const Eigen::VectorXd& m0,
                                 const Eigen::VectorXd& p1, const Eigen::VectorXd& m1, double h,
                                 double tau) {
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + tau) * h * m0 + (-2 * t3 + 3 * t2) * p1 +
         (t3 - t2) * h * m1;
}

Eigen::VectorXd hermite_velocity(const Eigen::VectorXd& p0, const Eigen::VectorXd& m0,
                                 const Eigen::VectorXd& p1, const Eigen::VectorXd& m1, double h,
                                 double tau) {
  const double t2 = tau * tau;
  return (6 * t2 - 6 * tau) / h * (p0 - p1) + (3 * t2 - 4 * tau + 1) * m0 + (3 * t2 - 2 * tau) * m1;
}

struct GeodesicState {
  Eigen::VectorXd q;
  Eigen::VectorXd v;
};

MetricEvaluation evaluate_finite(const MetricField& metric, const Eigen::VectorXd& q) {
  if (!q.allFinite()) throw NumericalError("geodesic integration produced a non-finite state");
  return metric.evaluate(q);
}

GeodesicState rk4_step(const MetricField& metric, const GeodesicState& s, double h) {
  const Eigen::VectorXd a1 = acceleration(evaluate_finite(metric, s.q), s.v);
  const Eigen::VectorXd q2 = s.q + 0.5 * h * s.v;
  const Eigen::VectorXd v2 = s.v + 0.5 * h * a1;
  const Eigen::VectorXd a2 = acceleration(evaluate_finite(metric, q2), v2);
  const Eigen::VectorXd q3 = s.q + 0.5 * h * v2;
  const Eigen::VectorXd v3 = s.v + 0.5 * h * a2;
  const Eigen::VectorXd a3 = acceleration(evaluate_finite(metric, q3), v3);
  const Eigen::VectorXd q4 = s.q + h * v3;
  const Eigen::VectorXd v4 = s.v + h * a3;
  const Eigen::VectorXd a4 = acceleration(evaluate_finite(metric, q4), v4);
  GeodesicState next;
  next.q = s.q + h / 6.0 * (s.v + 2 * v2 + 2 * v3 + v4);
  next.v = s.v + h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
  if (!next.q.allFinite() || !next.v.allFinite()) {
    throw NumericalError("geodesic integration produced a non-finite state");
  }
  return next;
}

}  // namespace

double inner_product(const MetricField& metric, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  check_size(metric, u, "first vector");
  check_size(metric, v, "second vector");
  return u.dot(metric.metric(q) * v);
}

double riemannian_norm(const MetricField& metric, const Eigen::VectorXd& q,
                       const Eigen::VectorXd& v) {
  return std::sqrt(std::max(0.0, inner_product(metric, q, v, v)));
}

double angle(const Eigen::MatrixXd& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double uu = u.dot(g * u);
  const double vv = v.dot(g * v);
  const double nu = std::sqrt(std::max(0.0, uu));
  const double nv = std::sqrt(std::max(0.0, vv));
  if (nu < kNormFloor || nv < kNormFloor) {
    throw ValidationError("angle undefined for a zero-norm vector");
  }
  const double c = std::clamp(u.dot(g * v) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

double angle(const MetricField& metric, const Eigen::VectorXd& q, const Eigen::VectorXd& u,
             const Eigen::VectorXd& v) {
  check_size(metric, u, "first vector");
  check_size(metric, v, "second vector");
  return angle(metric.metric(q), u, v);
}

double kinetic_energy(const MetricField& metric, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qdot) {
  return 0.5 * inner_product(metric, q, qdot, qdot);
}

Eigen::VectorXd christoffel_contraction(const MetricEvaluation& eval, const Eigen::VectorXd& a,
                                        const Eigen::VectorXd& b) {
  const auto n = static_cast<Eigen::Index>(eval.derivatives.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::MatrixXd& dk = eval.derivatives[k];
    out += 0.5 * (b[k] * (dk * a) + a[k] * (dk * b));
    out[k] -= 0.5 * a.dot(dk * b);
  }
  return out;
}

Eigen::VectorXd coriolis_term(const MetricField& metric, const Eigen::VectorXd& q,
                              const Eigen::VectorXd& qdot) {
  check_size(metric, qdot, "velocity");
  return christoffel_contraction(metric.evaluate(q), qdot, qdot);
}

Eigen::VectorXd geodesic_acceleration(const MetricField& metric, const Eigen::VectorXd& q,
                                      const Eigen::VectorXd& qdot) {
  check_size(metric, qdot, "velocity");
  return acceleration(metric.evaluate(q), qdot);
}

Eigen::VectorXd SampledCurve::position_at(double t) const {
  if (size() == 1) return position(0);
  const double u = std::clamp(t / step, 0.0, static_cast<double>(size() - 1));
  const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(u), size() - 2);
  return hermite_position(position(k), velocity(k), position(k + 1), velocity(k + 1), step,
                          u - static_cast<double>(k));
}

Eigen::VectorXd SampledCurve::velocity_at(double t) const {
  if (size() == 1) return velocity(0);
  const double u = std::clamp(t / step, 0.0, static_cast<double>(size() - 1));
  const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(u), size() - 2);
  return hermite_velocity(position(k), velocity(k), position(k + 1), velocity(k + 1), step,
                          u - static_cast<double>(k));
}

SampledCurve SampledCurve::reversed() const {
  SampledCurve out;
  out.step = step;
  out.positions = positions.colwise().reverse();
  out.velocities = -velocities.colwise().reverse();
  return out;
}

GeodesicCurve exp_map(const MetricField& metric, const Eigen::VectorXd& q0,
                      const Eigen::VectorXd& v0, int steps) {
  check_size(metric, q0, "initial point");
  check_size(metric, v0, "initial velocity");
  if (steps < 1) throw ValidationError("exp_map needs at least one integration step");
  const double h = 1.0 / steps;
  GeodesicCurve curve{q0, v0, {}};
  curve.samples.step = h;
  curve.samples.positions.resize(steps + 1, q0.size());
  curve.samples.velocities.resize(steps + 1, q0.size());
  GeodesicState s{q0, v0};
  curve.samples.positions.row(0) = s.q.transpose();
  curve.samples.velocities.row(0) = s.v.transpose();
  for (int k = 1; k <= steps; ++k) {
    s = rk4_step(metric, s, h);
    curve.samples.positions.row(k) = s.q.transpose();
    curve.samples.velocities.row(k) = s.v.transpose();
  }
  return curve;
}

Eigen::VectorXd geodesic_endpoint(const MetricField& metric, const Eigen::VectorXd& q0,
                                  const Eigen::VectorXd& v0, int steps) {
  check_size(metric, q0, "initial point");
  check_size(metric, v0, "initial velocity");
  if (steps < 1) throw ValidationError("exp_map needs at least one integration step");
  const double h = 1.0 / steps;
  GeodesicState s{q0, v0};
  for (int k = 0; k < steps; ++k) s = rk4_step(metric, s, h);
  return s.q;
}

namespace {

// Damped Newton iteration on the endpoint residual of the exponential map,
// starting from `guess`. Returns the best iterate found.
LogMapResult shoot_endpoint(const MetricField& metric, const Eigen::VectorXd& q0,
                            const Eigen::VectorXd& q1, const Eigen::VectorXd& guess,
                            double tolerance, const LogMapOptions& options) {
  const Eigen::Index n = q0.size();
  LogMapResult result;
  result.velocity = guess;
  Eigen::VectorXd end = geodesic_endpoint(metric, q0, result.velocity, options.steps);
  Eigen::VectorXd residual = end - q1;
  result.residual = residual.lpNorm<Eigen::Infinity>();

  for (; result.iterations < options.max_iterations && result.residual >= tolerance;
       ++result.iterations) {
    // Newton only needs an approximate Jacobian, so the probes use a coarser grid.
    const int coarse = std::min(options.steps, options.sensitivity_steps);
    const Eigen::VectorXd base = geodesic_endpoint(metric, q0, result.velocity, coarse);
    Eigen::MatrixXd sensitivity(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd probe = result.velocity;
      probe[j] += options.fd_step;
      sensitivity.col(j) =
          (geodesic_endpoint(metric, q0, probe, coarse) - base) / options.fd_step;
    }
    const Eigen::VectorXd delta = sensitivity.partialPivLu().solve(-residual);
    if (!delta.allFinite()) throw NumericalError("log_map: singular endpoint sensitivity");

    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 30; ++halving, step *= 0.5) {
      const Eigen::VectorXd trial = result.velocity + step * delta;
      Eigen::VectorXd trial_end;
      try {
        trial_end = geodesic_endpoint(metric, q0, trial, options.steps);
      } catch (const NumericalError&) {
        continue;
      }
      const Eigen::VectorXd trial_residual = trial_end - q1;
      if (trial_residual.norm() < residual.norm()) {
        result.velocity = trial;
        end = trial_end;
        residual = trial_residual;
        result.residual = residual.lpNorm<Eigen::Infinity>();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return result;
}

}  // namespace

LogMapResult solve_log_map(const MetricField& metric, const Eigen::VectorXd& q0,
                           const Eigen::VectorXd& q1, const LogMapOptions& options) {
  check_size(metric, q0, "start point");
  check_size(metric, q1, "end point");
  if (options.continuation_stages < 1 || options.sensitivity_steps < 1) {
    throw ValidationError("log_map needs positive continuation stages and sensitivity steps");
  }
  const Eigen::VectorXd chord = q1 - q0;
  const int stages = options.continuation_stages;

  // Targets walk along the chord so each stage starts next to its solution
  // and the iterates stay on the branch that grows out of v = 0.
  Eigen::VectorXd guess;
  double previous_fraction = 0.0;
  int iterations = 0;
  LogMapResult result;
  for (int stage = 1; stage <= stages; ++stage) {
    const double fraction = static_cast<double>(stage) / stages;
    const Eigen::VectorXd target = q0 + fraction * chord;
    if (stage == 1) {
      // Second-order inversion of the exponential map.
      const Eigen::VectorXd d = target - q0;
      guess = d - 0.5 * geodesic_acceleration(metric, q0, d);
    } else {
      guess = result.velocity * (fraction / previous_fraction);
    }
    const double tolerance =
        stage == stages ? options.tolerance : std::max(options.tolerance, 1e-6);
    result = shoot_endpoint(metric, q0, target, guess, tolerance, options);
    iterations += result.iterations;
    previous_fraction = fraction;
    if (result.residual >= tolerance) break;
  }
  result.iterations = iterations;
  if (result.residual < options.tolerance) return result;
  throw ConvergenceError("log_map did not converge (best residual " +
                             std::to_string(result.residual) + " rad)",
                         result.residual);
}

Eigen::VectorXd log_map(const MetricField& metric, const Eigen::VectorXd& q0,
                        const Eigen::VectorXd& q1, const LogMapOptions& options) {
  return solve_log_map(metric, q0, q1, options).velocity;
}

Eigen::VectorXd transport_step(const MetricField& metric, const Eigen::VectorXd& q_a,
                               const Eigen::VectorXd& qdot_a, const Eigen::VectorXd& q_b,
                               const Eigen::VectorXd& qdot_b, double h,
                               const Eigen::VectorXd& v) {
  const Eigen::VectorXd q_mid = hermite_position(q_a, qdot_a, q_b, qdot_b, h, 0.5);
  const Eigen::VectorXd qdot_mid = hermite_velocity(q_a, qdot_a, q_b, qdot_b, h, 0.5);
  const MetricEvaluation at_a = metric.evaluate(q_a);
  const MetricEvaluation at_mid = metric.evaluate(q_mid);
  const MetricEvaluation at_b = metric.evaluate(q_b);
  const Eigen::VectorXd k1 = transport_rate(at_a, qdot_a, v);
  const Eigen::VectorXd k2 = transport_rate(at_mid, qdot_mid, v + 0.5 * h * k1);
  const Eigen::VectorXd k3 = transport_rate(at_mid, qdot_mid, v + 0.5 * h * k2);
  const Eigen::VectorXd k4 = transport_rate(at_b, qdot_b, v + h * k3);
  Eigen::VectorXd out = v + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  if (!out.allFinite()) throw NumericalError("parallel transport produced a non-finite vector");
  return out;
}

Eigen::VectorXd parallel_transport(const MetricField& metric, const SampledCurve& curve,
                                   const Eigen::VectorXd& v, Eigen::Index from,
                                   Eigen::Index to) {
  check_size(metric, v, "transported vector");
  if (curve.size() == 0 || from < 0 || to < 0 || from >= curve.size() || to >= curve.size()) {
    throw ValidationError("parallel_transport: sample index out of range");
  }
  if (curve.positions.cols() != metric.dof() || curve.velocities.rows() != curve.size() ||
      curve.velocities.cols() != metric.dof()) {
    throw ValidationError("parallel_transport: curve shape does not match metric");
  }
  Eigen::VectorXd out = v;
  const Eigen::Index dir = to >= from ? 1 : -1;
  const double h = curve.step * static_cast<double>(dir);
  for (Eigen::Index k = from; k != to; k += dir) {
    out = transport_step(metric, curve.position(k), curve.velocity(k), curve.position(k + dir),
                         curve.velocity(k + dir), h, out);
  }
  return out;
}

Eigen::VectorXd parallel_transport(const MetricField& metric, const SampledCurve& curve,
                                   const Eigen::VectorXd& v) {
  return parallel_transport(metric, curve, v, 0, curve.size() - 1);
}

double curve_length(const MetricField& metric, const SampledCurve& curve) {
  if (curve.size() < 2) return 0.0;
  double total = 0.0;
  double prev = riemannian_norm(metric, curve.position(0), curve.velocity(0));
  for (Eigen::Index k = 1; k < curve.size(); ++k) {
    const double cur = riemannian_norm(metric, curve.position(k), curve.velocity(k));
    total += 0.5 * (prev + cur) * curve.step;
    prev = cur;
  }
  return total;
}

double curve_energy(const MetricField& metric, const SampledCurve& curve) {
  if (curve.size() < 2) return 0.0;
  double total = 0.0;
  double prev = kinetic_energy(metric, curve.position(0), curve.velocity(0));
  for (Eigen::Index k = 1; k < curve.size(); ++k) {
    const double cur = kinetic_energy(metric, curve.position(k), curve.velocity(k));
    total += 0.5 * (prev + cur) * curve.step;
    prev = cur;
  }
  return total;
}

}  // namespace geosyn
