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

#ifndef GEOSYN_SYNTHESIS_HPP_
#define GEOSYN_SYNTHESIS_HPP_

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "geosyn/metric.hpp"
#include "geosyn/trajectory.hpp"

namespace geosyn {

struct SynthesisOptions {
  int segments = 3;
  double dt = 0.01;
  int min_samples = 80;  // per geodesic piece
  int max_samples = 120;
  double min_turn = 0.5;  // rad, metric angle between consecutive directions
  double max_turn = 1.2;
  double min_length = 0.3;  // metric length of one piece
  double max_length = 0.8;
  /// Junction speeds drawn around the mean piece speed; zero gives
  /// rest-to-rest pieces.
  bool rest_junctions = false;
  int steps = 1000;
};

/// Piecewise-geodesic motion with cubic minimum-acceleration timing and
/// exact velocities.
struct SyntheticMotion {
  JointTrajectory trajectory;
  /// Sample index where each piece after the first begins. The sample
  /// carries the outgoing piece's velocity.
  std::vector<Eigen::Index> junctions;
  /// Metric angle between incoming and outgoing direction at each junction.
  std::vector<double> turns;
};

SyntheticMotion synthesize_piecewise_geodesic(const MetricField& metric, const Eigen::VectorXd& q0,
                                              const SynthesisOptions& options,
                                              std::mt19937_64& rng);

}  // namespace geosyn

#endif  // GEOSYN_SYNTHESIS_HPP_
