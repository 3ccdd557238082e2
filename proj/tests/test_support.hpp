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

#ifndef GEOSYN_TESTS_TEST_SUPPORT_HPP_
#define GEOSYN_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geosyn/chain.hpp"

namespace geosyn::testing {

inline Link point_mass_link(const std::string& name, int parent, const Eigen::Vector3d& origin,
                            double mass, double length) {
  Link l;
  l.name = name;
  l.parent = parent;
  l.axis = Eigen::Vector3d::UnitZ();
  l.origin_xyz = origin;
  l.mass = mass;
  l.com = Eigen::Vector3d(length, 0.0, 0.0);
  return l;
}

/// Planar chain of point masses at the distal end of each link, hand at the last tip.
inline KinematicModel planar_chain(const std::string& name, const std::vector<double>& lengths,
                                   const std::vector<double>& masses) {
  std::vector<Link> links;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const Eigen::Vector3d origin =
        i == 0 ? Eigen::Vector3d::Zero() : Eigen::Vector3d(lengths[i - 1], 0.0, 0.0);
    links.push_back(point_mass_link("l" + std::to_string(i + 1), static_cast<int>(i) - 1, origin,
                                    masses[i], lengths[i]));
  }
  Eigen::Isometry3d tool = Eigen::Isometry3d::Identity();
  tool.translation() = Eigen::Vector3d(lengths.back(), 0.0, 0.0);
  return KinematicModel(name, std::move(links), static_cast<int>(lengths.size()) - 1, tool);
}

/// Unit lengths and unit masses: G = [[3 + 2 cos q2, 1 + cos q2], [1 + cos q2, 1]].
inline KinematicModel planar_two_link() { return planar_chain("planar2", {1.0, 1.0}, {1.0, 1.0}); }

inline KinematicModel planar_three_link() {
  return planar_chain("planar3", {0.9, 0.7, 0.4}, {1.2, 0.8, 0.5});
}

inline const char* planar_two_link_json() {
  return R"({
  "name": "planar2",
  "end_effector": "l2",
  "tool": {"xyz": [1, 0, 0]},
  "links": [
    {"name": "l1", "parent": null, "axis": [0, 0, 1], "origin": {"xyz": [0, 0, 0]},
     "mass": 1, "com": [1, 0, 0], "inertia": [0, 0, 0, 0, 0, 0, 0, 0, 0]},
    {"name": "l2", "parent": "l1", "axis": [0, 0, 1], "origin": {"xyz": [1, 0, 0]},
     "mass": 1, "com": [1, 0, 0], "inertia": [0, 0, 0, 0, 0, 0, 0, 0, 0]}
  ]
})";
}

inline const char* planar_three_link_json() {
  return R"({
  "name": "planar3",
  "end_effector": "l3",
  "tool": {"xyz": [0.4, 0, 0]},
  "links": [
    {"name": "l1", "parent": null, "axis": [0, 0, 1], "mass": 1.2, "com": [0.9, 0, 0],
     "inertia": [0, 0, 0, 0, 0, 0, 0, 0, 0]},
    {"name": "l2", "parent": "l1", "axis": [0, 0, 1], "origin": {"xyz": [0.9, 0, 0]},
     "mass": 0.8, "com": [0.7, 0, 0], "inertia": [0, 0, 0, 0, 0, 0, 0, 0, 0]},
    {"name": "l3", "parent": "l2", "axis": [0, 0, 1], "origin": {"xyz": [0.7, 0, 0]},
     "mass": 0.5, "com": [0.4, 0, 0], "inertia": [0, 0, 0, 0, 0, 0, 0, 0, 0]}
  ]
})";
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v.normalized();
}

/// Randomized anthropomorphic arm: alternating roll/pitch axes tilted by up
/// to 0.3 rad, links lighter toward the hand, full random inertia tensors.
inline KinematicModel random_chain(int dof, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Link> links;
  double mass = 4.0;
  for (int i = 0; i < dof; ++i) {
    Link l;
    l.name = "j" + std::to_string(i);
    l.parent = i - 1;
    const Eigen::Vector3d base = i % 2 == 0 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitY();
    l.axis = Eigen::AngleAxisd(0.3 * u(rng), random_unit(rng)) * base;
    const double length = 0.25 + 0.05 * u(rng);
    if (i > 0) l.origin_xyz = Eigen::Vector3d(0.03 * u(rng), 0.03 * u(rng), 0.27 + 0.05 * u(rng));
    l.mass = mass * (1.0 + 0.2 * u(rng));
    mass *= 0.75;
    l.com = Eigen::Vector3d(0.02 * u(rng), 0.02 * u(rng), 0.5 * length);
    Eigen::Matrix3d a;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a(r, c) = 0.02 * u(rng);
    const double radial = l.mass * length * length / 12.0;
    l.inertia = Eigen::Vector3d(radial, radial, 0.2 * radial).asDiagonal();
    l.inertia += a * a.transpose();
    links.push_back(l);
  }
  Eigen::Isometry3d tool = Eigen::Isometry3d::Identity();
  tool.translation() = Eigen::Vector3d(0.0, 0.0, 0.15);
  return KinematicModel("random" + std::to_string(dof), std::move(links), dof - 1, tool);
}

inline Eigen::VectorXd random_vector(int n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace geosyn::testing

#endif  // GEOSYN_TESTS_TEST_SUPPORT_HPP_
