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

#include "geosyn/synthesis.hpp"

#include <cmath>

#include "geosyn/errors.hpp"
#include "geosyn/geometry.hpp"
#include "geosyn/synergy.hpp"

namespace geosyn {

namespace {

Eigen::VectorXd random_unit(const Eigen::MatrixXd& g, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(g.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  return v / std::sqrt(v.dot(g * v));
}

// Direction at metric angle `turn` from unit vector u.
Eigen::VectorXd turn_direction(const Eigen::MatrixXd& g, const Eigen::VectorXd& u, double turn,
                               std::mt19937_64& rng) {
  Eigen::VectorXd w;
  double norm = 0.0;
  do {
    w = random_unit(g, rng);
    w -= w.dot(g * u) * u;
    norm = std::sqrt(w.dot(g * w));
  } while (norm < 1e-3);
  w /= norm;
  return std::cos(turn) * u + std::sin(turn) * w;
}

}  // namespace

SyntheticMotion synthesize_piecewise_geodesic(const MetricField& metric, const Eigen::VectorXd& q0,
                                              const SynthesisOptions& options,
                                              std::mt19937_64& rng) {
  if (options.segments < 1) throw ValidationError("need at least one piece");
  if (q0.size() != metric.dof()) throw ValidationError("start configuration size mismatch");
  std::uniform_int_distribution<int> samples_dist(options.min_samples, options.max_samples);
  std::uniform_real_distribution<double> turn_dist(options.min_turn, options.max_turn);
  std::uniform_real_distribution<double> length_dist(options.min_length, options.max_length);
  std::uniform_real_distribution<double> speed_factor(0.8, 1.2);

  const int pieces = options.segments;
  std::vector<int> samples(pieces);
  std::vector<double> lengths(pieces);
  for (int g = 0; g < pieces; ++g) {
    samples[g] = samples_dist(rng);
    lengths[g] = length_dist(rng);
  }
  // Junction speeds near the mean speed of the adjacent pieces keep every
  // cubic time course monotone.
  std::vector<double> speeds(pieces + 1, 0.0);
  for (int k = 0; k <= pieces; ++k) {
    double mean = 0.0;
    int count = 0;
    if (k > 0) {
      mean += lengths[k - 1] / (samples[k - 1] * options.dt);
      ++count;
    }
    if (k < pieces) {
      mean += lengths[k] / (samples[k] * options.dt);
      ++count;
    }
    const double draw = speed_factor(rng);
    speeds[k] = options.rest_junctions ? 0.0 : draw * mean / count;
  }

  SyntheticMotion out;
  Eigen::Index total = 1;
  for (int g = 0; g < pieces; ++g) total += samples[g];
  out.trajectory.dt = options.dt;
  out.trajectory.positions.resize(total, q0.size());
  Eigen::MatrixXd velocities(total, q0.size());

  Eigen::VectorXd q = q0;
  Eigen::VectorXd direction = random_unit(metric.metric(q), rng);
  Eigen::Index row = 0;
  for (int g = 0; g < pieces; ++g) {
    if (g > 0) {
      const double turn = turn_dist(rng);
      direction = turn_direction(metric.metric(q), direction, turn, rng);
      out.junctions.push_back(row);
      out.turns.push_back(turn);
    }
    const Eigen::VectorXd v = direction * lengths[g];
    const double duration = samples[g] * options.dt;
    const TemporalProfile profile =
        temporal_profile(lengths[g], duration, speeds[g], speeds[g + 1]);
    Eigen::MatrixXd pos;
    Eigen::MatrixXd vel;
    sample_profiled_geodesic(metric, q, v, lengths[g], profile, options.dt, samples[g] + 1,
                             options.steps, pos, vel);
    const Eigen::Index keep = g + 1 == pieces ? samples[g] + 1 : samples[g];
    out.trajectory.positions.middleRows(row, keep) = pos.topRows(keep);
    velocities.middleRows(row, keep) = vel.topRows(keep);
    row += samples[g];
    // Continue from the exact geodesic endpoint and its unit tangent.
    const GeodesicCurve curve = exp_map(metric, q, v, options.steps);
    q = curve.endpoint();
    const Eigen::VectorXd tangent = curve.terminal_velocity();
    direction = tangent / riemannian_norm(metric, q, tangent);
  }
  out.trajectory.velocities = std::move(velocities);
  return out;
}

}  // namespace geosyn
