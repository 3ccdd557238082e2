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

#ifndef GEOSYN_CLI_HPP_
#define GEOSYN_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace geosyn {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

struct RunConfig {
  std::string command;
  std::string model;
  std::string target_model;
  std::string trajectory;
  double delta_theta = 0.1;
  int sg_window = 21;
  int sg_order = 2;
  std::string mode = "riemannian";
  double merge_threshold = 0.05;
  int steps = 1000;
  std::string out = ".";
  std::optional<unsigned long long> seed;
  // synthesize only
  int segments = 3;
  double dt = 0.01;
  bool rest_junctions = false;
  // tolerance overrides
  double log_tolerance = 1e-9;
  double position_tolerance = 1e-3;
  double orientation_tolerance = 1e-2;
  int shoot_iterations = 200;
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_reconstruct(const RunConfig& config, std::ostream& out);
int cmd_retarget(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_synthesize(const RunConfig& config, std::ostream& out);

}  // namespace geosyn

#endif  // GEOSYN_CLI_HPP_
