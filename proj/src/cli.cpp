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

#include "geosyn/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "geosyn/chain.hpp"
#include "geosyn/errors.hpp"
#include "geosyn/io.hpp"
#include "geosyn/metric.hpp"
#include "geosyn/retarget.hpp"
#include "geosyn/segmentation.hpp"
#include "geosyn/synergy.hpp"
#include "geosyn/synthesis.hpp"

namespace geosyn {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string out_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out) / name).string();
}

void prepare_out(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw ValidationError("cannot create output directory '" + config.out + "'");
}

void write_json(const std::string& path, const ojson& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
}

ojson vector_json(const Eigen::VectorXd& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ojson pose_json(const TaskPose& p) {
  return ojson{{"position", {p.position.x(), p.position.y(), p.position.z()}},
               {"quat",
                {p.orientation.w(), p.orientation.x(), p.orientation.y(), p.orientation.z()}}};
}

ojson segments_json(const SegmentBoundaryList& segments, const JointTrajectory& traj) {
  ojson list = ojson::array();
  for (std::size_t g = 0; g < segments.size(); ++g) {
    list.push_back({{"g", g},
                    {"first", segments[g].first},
                    {"last", segments[g].last},
                    {"t_start", traj.time(segments[g].first)},
                    {"t_end", traj.time(segments[g].last)}});
  }
  return ojson{{"count", segments.size()}, {"segments", list}};
}

KinematicModel load_checked_model(const std::string& path, const char* flag) {
  if (path.empty()) throw ValidationError(std::string("missing required option ") + flag);
  return load_model_file(path);
}

JointTrajectory load_input(const RunConfig& config, const KinematicModel& model) {
  if (config.trajectory.empty()) throw ValidationError("missing required option --trajectory");
  JointTrajectory traj = read_trajectory(config.trajectory);
  if (traj.dof() != model.dof()) {
    throw ValidationError("trajectory '" + config.trajectory + "' has " +
                          std::to_string(traj.dof()) + " joints, model '" + model.name() +
                          "' has " + std::to_string(model.dof()));
  }
  return estimate_velocities(traj, config.sg_window, config.sg_order);
}

SynergyOptions synergy_options(const RunConfig& config) {
  SynergyOptions o;
  o.steps = config.steps;
  o.log.steps = config.steps;
  o.log.tolerance = config.log_tolerance;
  return o;
}

struct ModeRun {
  ReconstructedMotion motion;
  SegmentBoundaryList segments;
};

ModeRun run_mode(const KinematicModel& model, const JointTrajectory& traj, ReconstructionMode mode,
                 const RunConfig& config) {
  ModeRun run;
  const ChainMetric metric(model);
  switch (mode) {
    case ReconstructionMode::kRiemannian:
      run.segments = segment_riemannian(metric, traj, config.delta_theta);
      run.motion = reconstruct(metric, traj, run.segments, mode, synergy_options(config));
      break;
    case ReconstructionMode::kEuclidean:
      run.segments = segment_zero_velocity(traj);
      run.motion = reconstruct(metric, traj, run.segments, mode, synergy_options(config));
      break;
    case ReconstructionMode::kIk:
      run.segments = {{0, traj.last()}};
      run.motion = ik_track(model, pose_trajectory(model, traj), traj.position(0), traj.dt);
      run.motion.joints.start_time = traj.start_time;
      break;
  }
  run.motion.poses = pose_trajectory(model, run.motion.joints);
  return run;
}

std::string motion_name(const std::string& path) { return fs::path(path).stem().string(); }

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& out) {
  const KinematicModel model = load_checked_model(config.model, "--model");
  const JointTrajectory traj = load_input(config, model);
  prepare_out(config);
  const ChainMetric metric(model);
  const RiemannianSegmentation riem = segment_riemannian_trace(metric, traj, config.delta_theta);
  const SegmentBoundaryList eucl = segment_zero_velocity(traj);

  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "analyze";
  doc["model"] = model.name();
  doc["samples"] = traj.samples();
  doc["dt"] = traj.dt;
  doc["delta_theta"] = config.delta_theta;
  doc["sg_window"] = config.sg_window;
  doc["riemannian"] = segments_json(riem.segments, traj);
  doc["euclidean"] = segments_json(eucl, traj);
  write_json(out_path(config, "segments.json"), doc);

  Table vel;
  vel.header.push_back("t");
  for (Eigen::Index j = 0; j < traj.dof(); ++j) vel.header.push_back("qd" + std::to_string(j + 1));
  vel.data.resize(traj.samples(), traj.dof() + 1);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) vel.data(k, 0) = traj.time(k);
  vel.data.rightCols(traj.dof()) = *traj.velocities;
  write_table(out_path(config, "velocities.csv"), vel);

  Table angles;
  angles.header = {"t", "angle", "riemannian_segment", "euclidean_segment"};
  angles.data.resize(traj.samples(), 4);
  auto label = [](const SegmentBoundaryList& segs, Eigen::Index k) {
    for (std::size_t g = 0; g < segs.size(); ++g) {
      if (k >= segs[g].first && k <= segs[g].last) return static_cast<double>(g);
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    angles.data.row(k) << traj.time(k), riem.angles[k], label(riem.segments, k), label(eucl, k);
  }
  write_table(out_path(config, "angles.csv"), angles);

  out << "riemannian segments: " << riem.segments.size() << "\n"
      << "euclidean segments: " << eucl.size() << "\n";
  return kExitOk;
}

int cmd_reconstruct(const RunConfig& config, std::ostream& out) {
  const KinematicModel model = load_checked_model(config.model, "--model");
  const JointTrajectory traj = load_input(config, model);
  const ReconstructionMode mode = parse_mode(config.mode);
  prepare_out(config);
  const ModeRun run = run_mode(model, traj, mode, config);
  const std::vector<TaskPose> truth = pose_trajectory(model, traj);
  const double jerr = joint_error(run.motion.joints, traj);
  const PoseErrors perr = pose_error(run.motion.poses, truth);

  write_trajectory(out_path(config, "reconstruction.csv"), run.motion.joints);

  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "reconstruct";
  doc["model"] = model.name();
  doc["mode"] = to_string(mode);
  ojson segs = ojson::array();
  for (const SynergySegment& s : run.motion.segments) {
    segs.push_back({{"g", s.index},
                    {"t_start", s.t_start},
                    {"t_end", s.t_end},
                    {"length", s.length},
                    {"speed_start", s.speed_start},
                    {"speed_end", s.speed_end},
                    {"monotone", s.profile.monotone}});
  }
  doc["segments"] = segs;
  doc["metrics"] = {{"joint_error", jerr},
                    {"position_error", perr.position},
                    {"orientation_error", perr.orientation}};
  write_json(out_path(config, "reconstruction.json"), doc);

  const Eigen::Index n = traj.dof();
  Table joints;
  joints.header.push_back("t");
  for (Eigen::Index j = 0; j < n; ++j) joints.header.push_back("q" + std::to_string(j + 1) + "_truth");
  for (Eigen::Index j = 0; j < n; ++j) joints.header.push_back("q" + std::to_string(j + 1) + "_model");
  joints.data.resize(traj.samples(), 2 * n + 1);
  Table hand;
  hand.header = {"t", "x_truth", "y_truth", "z_truth", "x_model", "y_model", "z_model"};
  hand.data.resize(traj.samples(), 7);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    joints.data(k, 0) = traj.time(k);
    joints.data.block(k, 1, 1, n) = traj.positions.row(k);
    joints.data.block(k, 1 + n, 1, n) = run.motion.joints.positions.row(k);
    hand.data(k, 0) = traj.time(k);
    hand.data.block<1, 3>(k, 1) = truth[k].position.transpose();
    hand.data.block<1, 3>(k, 4) = run.motion.poses[k].position.transpose();
  }
  write_table(out_path(config, "joints_plot.csv"), joints);
  write_table(out_path(config, "hand_plot.csv"), hand);

  out << "mode " << to_string(mode) << ": " << run.motion.segments.size() << " synergies, joint error "
      << format_number(jerr) << " rad, position error " << format_number(perr.position) << " m\n";
  return kExitOk;
}

int cmd_retarget(const RunConfig& config, std::ostream& out) {
  const KinematicModel source = load_checked_model(config.model, "--model");
  const KinematicModel target = load_checked_model(config.target_model, "--target-model");
  const JointTrajectory traj = load_input(config, source);
  prepare_out(config);

  const SegmentBoundaryList segments =
      segment_riemannian(ChainMetric(source), traj, config.delta_theta);
  RetargetOptions options;
  options.merge_threshold = config.merge_threshold;
  options.shoot.steps = config.steps;
  options.shoot.position_tolerance = config.position_tolerance;
  options.shoot.orientation_tolerance = config.orientation_tolerance;
  options.shoot.max_iterations = config.shoot_iterations;
  const RetargetResult result = retarget_motion(source, traj, segments, target, options);

  write_trajectory(out_path(config, "retarget.csv"), result.joints);
  write_table(out_path(config, "retarget_hand.csv"), pose_table(traj.dt, result.poses));

  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "retarget";
  doc["source_model"] = source.name();
  doc["target_model"] = target.name();
  doc["start"] = vector_json(result.start);
  ojson syn = ojson::array();
  int converged = 0;
  for (const SynergyTransfer& s : result.synergies) {
    converged += s.converged ? 1 : 0;
    syn.push_back({{"g", s.index},
                   {"t_start", s.t_start},
                   {"t_end", s.t_end},
                   {"desired", pose_json(s.desired)},
                   {"achieved", pose_json(s.achieved)},
                   {"residual_m", s.residual_position},
                   {"residual_rad", s.residual_orientation},
                   {"iterations", s.iterations},
                   {"converged", s.converged}});
  }
  doc["synergies"] = syn;
  doc["failures"] = result.failures;
  write_json(out_path(config, "retarget.json"), doc);

  out << "retargeted " << result.synergies.size() << " synergies, " << converged
      << " converged\n";
  for (const auto& f : result.failures) out << "  " << f << "\n";
  return converged == 0 ? kExitNumerical : kExitOk;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  const KinematicModel model = load_checked_model(config.model, "--model");
  const JointTrajectory traj = load_input(config, model);
  prepare_out(config);
  const std::vector<TaskPose> truth = pose_trajectory(model, traj);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Cells {
    double joint = std::numeric_limits<double>::quiet_NaN();
    PoseErrors pose{std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN()};
  };
  const ReconstructionMode modes[] = {ReconstructionMode::kRiemannian,
                                      ReconstructionMode::kEuclidean, ReconstructionMode::kIk};
  Cells cells[3];
  int succeeded = 0;
  for (int m = 0; m < 3; ++m) {
    try {
      const ModeRun run = run_mode(model, traj, modes[m], config);
      cells[m].joint = joint_error(run.motion.joints, traj);
      cells[m].pose = pose_error(run.motion.poses, truth);
      ++succeeded;
    } catch (const std::exception& e) {
      out << to_string(modes[m]) << " failed: " << e.what() << "\n";
    }
  }

  Table table;
  table.header = {"riemannian_joint",        "euclidean_joint",         "ik_joint",
                  "riemannian_position",     "euclidean_position",      "riemannian_orientation",
                  "euclidean_orientation"};
  table.data.resize(1, 7);
  table.data << cells[0].joint, cells[1].joint, cells[2].joint, cells[0].pose.position,
      cells[1].pose.position, cells[0].pose.orientation, cells[1].pose.orientation;
  (void)nan;
  // Leading text column with the motion name.
  std::string text = "motion";
  for (const auto& h : table.header) text += "," + h;
  text += "\n" + motion_name(config.trajectory);
  for (Eigen::Index c = 0; c < table.data.cols(); ++c) text += "," + format_number(table.data(0, c));
  text += "\n";
  write_file_atomic(out_path(config, "compare.csv"), text);
  out << text;
  return succeeded > 0 ? kExitOk : kExitNumerical;
}

int cmd_synthesize(const RunConfig& config, std::ostream& out) {
  const KinematicModel model = load_checked_model(config.model, "--model");
  if (!config.seed) throw ValidationError("synthesize requires --seed");
  prepare_out(config);
  std::mt19937_64 rng(*config.seed);
  std::uniform_real_distribution<double> start_dist(-1.0, 1.0);
  Eigen::VectorXd q0(model.dof());
  for (Eigen::Index i = 0; i < q0.size(); ++i) q0[i] = start_dist(rng);
  SynthesisOptions options;
  options.segments = config.segments;
  options.dt = config.dt;
  options.rest_junctions = config.rest_junctions;
  options.steps = config.steps;
  const ChainMetric metric(model);
  const SyntheticMotion motion = synthesize_piecewise_geodesic(metric, q0, options, rng);
  write_trajectory(out_path(config, "synthetic.csv"), motion.trajectory);
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "synthesize";
  doc["model"] = model.name();
  doc["seed"] = *config.seed;
  doc["junctions"] = motion.junctions;
  doc["turns"] = motion.turns;
  write_json(out_path(config, "synthetic.json"), doc);
  out << "wrote " << motion.trajectory.samples() << " samples, " << config.segments
      << " geodesic pieces\n";
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Geodesic synergy analysis, reconstruction and retargeting"};
  app.require_subcommand(1);

  auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--model", config.model, "Kinematic model (JSON)");
    sub->add_option("--trajectory", config.trajectory, "Joint trajectory table (t,q1..qn)");
    sub->add_option("--delta-theta", config.delta_theta, "Segmentation angle threshold (rad)")
        ->check(CLI::Range(1e-9, M_PI));
    sub->add_option("--sg-window", config.sg_window, "Savitzky-Golay window (odd, samples)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--steps", config.steps, "RK4 steps per unit geodesic time")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", config.out, "Output directory");
    sub->add_option("--seed", config.seed, "Random seed for generated data");
    sub->add_option("--log-tolerance", config.log_tolerance, "log_map endpoint tolerance (rad)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Segment a motion with both methods");
  add_common(analyze);
  CLI::App* reconstruct_cmd = app.add_subcommand("reconstruct", "Reconstruct a motion");
  add_common(reconstruct_cmd);
  reconstruct_cmd->add_option("--mode", config.mode, "riemannian | euclidean | ik")
      ->check(CLI::IsMember({"riemannian", "euclidean", "ik"}));
  CLI::App* retarget_cmd = app.add_subcommand("retarget", "Transfer a motion to another chain");
  add_common(retarget_cmd);
  retarget_cmd->add_option("--target-model", config.target_model, "Target kinematic model");
  retarget_cmd->add_option("--merge-threshold", config.merge_threshold,
                           "Minimum joint-space chord per synergy (rad)")
      ->check(CLI::NonNegativeNumber);
  retarget_cmd->add_option("--position-tolerance", config.position_tolerance, "m")
      ->check(CLI::PositiveNumber);
  retarget_cmd->add_option("--orientation-tolerance", config.orientation_tolerance, "rad")
      ->check(CLI::PositiveNumber);
  retarget_cmd->add_option("--max-iterations", config.shoot_iterations, "Shooting iterations")
      ->check(CLI::PositiveNumber);
  CLI::App* compare = app.add_subcommand("compare", "Error table for all three models");
  add_common(compare);
  CLI::App* synth = app.add_subcommand("synthesize", "Generate a piecewise-geodesic motion");
  add_common(synth);
  synth->add_option("--segments", config.segments, "Number of geodesic pieces")
      ->check(CLI::PositiveNumber);
  synth->add_option("--dt", config.dt, "Sample period (s)")->check(CLI::PositiveNumber);
  synth->add_flag("--rest-junctions", config.rest_junctions, "Come to rest between pieces");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*analyze) return cmd_analyze(config, out);
    if (*reconstruct_cmd) return cmd_reconstruct(config, out);
    if (*retarget_cmd) return cmd_retarget(config, out);
    if (*compare) return cmd_compare(config, out);
    if (*synth) return cmd_synthesize(config, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace geosyn
