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

#include "geosyn/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "geosyn/errors.hpp"

namespace geosyn {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, std::size_t row) {
  if (cell == "nan" || cell == "NaN" || cell.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ValidationError("row " + std::to_string(row) + ": '" + cell + "' is not a number");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Table parse_table(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  Table table;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  table.header = split(line);
  if (table.header.empty() || table.header.front().empty()) {
    throw ValidationError("table has no header row");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw ValidationError("row " + std::to_string(rows.size() + 1) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(table.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, rows.size() + 1));
    rows.push_back(std::move(row));
  }
  table.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) table.data(r, c) = rows[r][c];
  }
  return table;
}

std::string format_table(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (Eigen::Index r = 0; r < table.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.data.cols(); ++c) {
      if (c) out += ',';
      out += format_number(table.data(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw ValidationError("failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ValidationError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

Table read_table(const std::string& path) { return parse_table(read_file(path)); }

void write_table(const std::string& path, const Table& table) {
  write_file_atomic(path, format_table(table));
}

JointTrajectory parse_trajectory(const std::string& text) {
  const Table table = parse_table(text);
  const auto cols = table.header.size();
  if (cols < 2 || table.header[0] != "t") {
    throw ValidationError("trajectory header must be t,q1,...,qn");
  }
  for (std::size_t c = 1; c < cols; ++c) {
    if (table.header[c] != "q" + std::to_string(c)) {
      throw ValidationError("trajectory header column " + std::to_string(c + 1) +
                            " must be 'q" + std::to_string(c) + "'");
    }
  }
  if (table.data.rows() < 2) throw ValidationError("trajectory needs at least two samples");
  if (!table.data.allFinite()) throw ValidationError("trajectory has non-finite entries");
  const Eigen::VectorXd t = table.data.col(0);
  const double dt = (t(t.size() - 1) - t(0)) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw ValidationError("trajectory time must increase");
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (std::abs(t(k) - (t(0) + dt * static_cast<double>(k))) > 1e-9) {
      throw ValidationError("trajectory is not uniformly sampled at row " +
                            std::to_string(k + 1));
    }
  }
  JointTrajectory traj;
  traj.dt = dt;
  traj.start_time = t(0);
  traj.positions = table.data.rightCols(static_cast<Eigen::Index>(cols - 1));
  traj.validate();
  return traj;
}

JointTrajectory read_trajectory(const std::string& path) {
  return parse_trajectory(read_file(path));
}

Table trajectory_table(const JointTrajectory& traj) {
  Table table;
  table.header.push_back("t");
  for (Eigen::Index j = 0; j < traj.dof(); ++j) table.header.push_back("q" + std::to_string(j + 1));
  table.data.resize(traj.samples(), traj.dof() + 1);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) table.data(k, 0) = traj.time(k);
  table.data.rightCols(traj.dof()) = traj.positions;
  return table;
}

void write_trajectory(const std::string& path, const JointTrajectory& traj) {
  write_table(path, trajectory_table(traj));
}

Table pose_table(double dt, const std::vector<TaskPose>& poses) {
  Table table;
  table.header = {"t", "x", "y", "z", "qw", "qx", "qy", "qz"};
  table.data.resize(static_cast<Eigen::Index>(poses.size()), 8);
  for (std::size_t k = 0; k < poses.size(); ++k) {
    const auto& p = poses[k];
    table.data.row(k) << dt * static_cast<double>(k), p.position.x(), p.position.y(),
        p.position.z(), p.orientation.w(), p.orientation.x(), p.orientation.y(),
        p.orientation.z();
  }
  return table;
}

}  // namespace geosyn
