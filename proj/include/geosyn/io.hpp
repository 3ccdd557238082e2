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

#ifndef GEOSYN_IO_HPP_
#define GEOSYN_IO_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geosyn/chain.hpp"
#include "geosyn/trajectory.hpp"

namespace geosyn {

/// Version tag written into every emitted document.
inline constexpr int kSchemaVersion = 1;

/// Comma-separated numeric table with a header row. "nan" cells are allowed.
struct Table {
  std::vector<std::string> header;
  Eigen::MatrixXd data;
};

Table parse_table(const std::string& text);
std::string format_table(const Table& table);

Table read_table(const std::string& path);
void write_table(const std::string& path, const Table& table);

/// Header `t,q1,...,qn`; rows must be uniformly spaced in t within 1e-9 s.
JointTrajectory parse_trajectory(const std::string& text);
JointTrajectory read_trajectory(const std::string& path);
Table trajectory_table(const JointTrajectory& traj);
void write_trajectory(const std::string& path, const JointTrajectory& traj);

/// Columns t,x,y,z,qw,qx,qy,qz.
Table pose_table(double dt, const std::vector<TaskPose>& poses);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace geosyn

#endif  // GEOSYN_IO_HPP_
