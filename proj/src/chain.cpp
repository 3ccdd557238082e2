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

#include "geosyn/chain.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "geosyn/errors.hpp"

namespace geosyn {

namespace {

constexpr double kUnitTolerance = 1e-9;

using Matrix6d = Eigen::Matrix<double, 6, 6>;

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d s;
  s << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return s;
}

// Spatial vectors are ordered (angular; linear at the world origin).
Matrix6d motion_cross(const Vector6d& v) {
  Matrix6d m = Matrix6d::Zero();
  const Eigen::Matrix3d w = skew(v.head<3>());
  m.topLeftCorner<3, 3>() = w;
  m.bottomRightCorner<3, 3>() = w;
  m.bottomLeftCorner<3, 3>() = skew(v.tail<3>());
  return m;
}

Matrix6d spatial_inertia(const Link& link, const Eigen::Isometry3d& frame) {
  const Eigen::Matrix3d r = frame.linear();
  const Eigen::Vector3d c = frame * link.com;
  const Eigen::Matrix3d cx = skew(c);
  Matrix6d inertia;
  inertia.topLeftCorner<3, 3>() = r * link.inertia * r.transpose() + link.mass * cx * cx.transpose();
  inertia.topRightCorner<3, 3>() = link.mass * cx;
  inertia.bottomLeftCorner<3, 3>() = link.mass * cx.transpose();
  inertia.bottomRightCorner<3, 3>() = link.mass * Eigen::Matrix3d::Identity();
  return inertia;
}

Eigen::Vector3d read_vec3(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError(what + ": expected an array of 3 numbers");
  }
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ValidationError(what + ": expected numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

Eigen::Quaterniond read_quat(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) {
    throw ValidationError(what + ": expected [w, x, y, z]");
  }
  double c[4];
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number()) throw ValidationError(what + ": expected numbers");
    c[i] = j[i].get<double>();
  }
  return Eigen::Quaterniond(c[0], c[1], c[2], c[3]);
}

double read_number(const nlohmann::json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ValidationError(what + ": missing numeric field '" + key + "'");
  }
  return j[key].get<double>();
}

Eigen::Isometry3d read_origin(const nlohmann::json& j, const std::string& what,
                              Eigen::Vector3d& xyz, Eigen::Quaterniond& quat) {
  xyz.setZero();
  quat.setIdentity();
  if (j.contains("xyz")) xyz = read_vec3(j["xyz"], what + " origin.xyz");
  if (j.contains("quat")) quat = read_quat(j["quat"], what + " origin.quat");
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = xyz;
  t.linear() = quat.normalized().toRotationMatrix();
  return t;
}

}  // namespace

TaskPose::TaskPose(const Eigen::Vector3d& p, const Eigen::Quaterniond& q)
    : position(p), orientation(q.normalized()) {
  if (orientation.w() < 0.0) orientation.coeffs() = -orientation.coeffs();
}

Eigen::Isometry3d TaskPose::isometry() const {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = position;
  t.linear() = orientation.toRotationMatrix();
  return t;
}

TaskPose TaskPose::from_isometry(const Eigen::Isometry3d& t) {
  return TaskPose(t.translation(), Eigen::Quaterniond(t.linear()));
}

Eigen::Isometry3d Link::origin() const {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() = origin_xyz;
  t.linear() = origin_quat.toRotationMatrix();
  return t;
}

KinematicModel::KinematicModel(std::string name, std::vector<Link> links, int end_effector,
                               Eigen::Isometry3d tool)
    : name_(std::move(name)), links_(std::move(links)), end_effector_(end_effector), tool_(tool) {
  if (links_.empty()) throw ValidationError("model '" + name_ + "' has no links");
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    const std::string tag = "link '" + l.name + "'";
    if (l.parent != static_cast<int>(i) - 1) {
      throw ValidationError(tag + ": broken chain, parent must be the previous link");
    }
    if (std::abs(l.axis.norm() - 1.0) > kUnitTolerance) {
      throw ValidationError(tag + ": non-unit joint axis");
    }
    if (std::abs(l.origin_quat.norm() - 1.0) > kUnitTolerance) {
      throw ValidationError(tag + ": non-unit origin quaternion");
    }
    if (!(l.mass >= 0.0) || !std::isfinite(l.mass)) {
      throw ValidationError(tag + ": mass must be finite and non-negative");
    }
    if (!l.com.allFinite() || !l.origin_xyz.allFinite() || !l.inertia.allFinite()) {
      throw ValidationError(tag + ": non-finite parameter");
    }
    if ((l.inertia - l.inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ValidationError(tag + ": inertia tensor is not symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(l.inertia);
    const double scale = std::max(1.0, l.inertia.cwiseAbs().maxCoeff());
    if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
      throw ValidationError(tag + ": inertia tensor is not positive semi-definite");
    }
  }
  if (end_effector_ < 0 || end_effector_ >= dof()) {
    throw ValidationError("model '" + name_ + "': end effector index out of range");
  }
}

double KinematicModel::arm_length() const {
  double length = 0.0;
  for (int i = 1; i <= end_effector_; ++i) length += links_[i].origin_xyz.norm();
  return length + tool_.translation().norm();
}

void KinematicModel::check_configuration(const Configuration& q) const {
  if (q.size() != dof()) {
    throw ValidationError("configuration has " + std::to_string(q.size()) +
                          " entries, model '" + name_ + "' has " + std::to_string(dof()) +
                          " joints");
  }
  if (!q.allFinite()) throw ValidationError("configuration has non-finite entries");
}

KinematicModel load_model(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("model document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("model document must be an object");
  const std::string name = j.value("name", std::string("unnamed"));
  if (!j.contains("links") || !j["links"].is_array()) {
    throw ValidationError("model '" + name + "': missing 'links' array");
  }
  if (!j.contains("end_effector") || !j["end_effector"].is_string()) {
    throw ValidationError("model '" + name + "': missing 'end_effector' link name");
  }

  std::vector<Link> links;
  for (const auto& jl : j["links"]) {
    Link l;
    if (!jl.contains("name") || !jl["name"].is_string()) {
      throw ValidationError("model '" + name + "': link without a name");
    }
    l.name = jl["name"].get<std::string>();
    const std::string tag = "link '" + l.name + "'";
    if (!jl.contains("parent")) throw ValidationError(tag + ": missing 'parent'");
    if (jl["parent"].is_null()) {
      l.parent = -1;
    } else if (jl["parent"].is_string()) {
      const std::string parent = jl["parent"].get<std::string>();
      l.parent = -2;
      for (std::size_t k = 0; k < links.size(); ++k) {
        if (links[k].name == parent) l.parent = static_cast<int>(k);
      }
      if (l.parent == -2) throw ValidationError(tag + ": unknown parent '" + parent + "'");
    } else {
      throw ValidationError(tag + ": 'parent' must be a link name or null");
    }
    if (!jl.contains("axis")) throw ValidationError(tag + ": missing 'axis'");
    l.axis = read_vec3(jl["axis"], tag + " axis");
    if (jl.contains("origin")) read_origin(jl["origin"], tag, l.origin_xyz, l.origin_quat);
    l.mass = read_number(jl, "mass", tag);
    if (!jl.contains("com")) throw ValidationError(tag + ": missing 'com'");
    l.com = read_vec3(jl["com"], tag + " com");
    if (!jl.contains("inertia") || !jl["inertia"].is_array() || jl["inertia"].size() != 9) {
      throw ValidationError(tag + ": 'inertia' must hold 9 row-major values");
    }
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const auto& v = jl["inertia"][3 * r + c];
        if (!v.is_number()) throw ValidationError(tag + ": inertia entries must be numbers");
        l.inertia(r, c) = v.get<double>();
      }
    }
    links.push_back(std::move(l));
  }

  const std::string ee = j["end_effector"].get<std::string>();
  int ee_index = -1;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (links[k].name == ee) ee_index = static_cast<int>(k);
  }
  if (ee_index < 0) {
    throw ValidationError("model '" + name + "': end effector '" + ee + "' is not a link");
  }

  Eigen::Isometry3d tool = Eigen::Isometry3d::Identity();
  if (j.contains("tool")) {
    Eigen::Vector3d xyz;
    Eigen::Quaterniond quat;
    read_origin(j["tool"], "tool", xyz, quat);
    if (std::abs(quat.norm() - 1.0) > kUnitTolerance) {
      throw ValidationError("tool: non-unit quaternion");
    }
    tool.translation() = xyz;
    tool.linear() = quat.toRotationMatrix();
  }
  return KinematicModel(name, std::move(links), ee_index, tool);
}

KinematicModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_model(buffer.str());
}

ChainState compute_chain_state(const KinematicModel& model, const Configuration& q) {
  model.check_configuration(q);
  const int n = model.dof();
  ChainState state;
  state.link_frames.resize(n);
  state.joint_positions.resize(n);
  state.joint_axes.resize(n);
  Eigen::Isometry3d parent = Eigen::Isometry3d::Identity();
  for (int i = 0; i < n; ++i) {
    const Link& l = model.link(i);
    const Eigen::Isometry3d joint = parent * l.origin();
    state.joint_positions[i] = joint.translation();
    state.joint_axes[i] = joint.linear() * l.axis;
    state.link_frames[i] = joint * Eigen::AngleAxisd(q[i], l.axis);
    parent = state.link_frames[i];
  }
  state.hand = state.link_frames[model.end_effector()] * model.tool();
  return state;
}

TaskPose forward_kinematics(const KinematicModel& model, const Configuration& q) {
  return TaskPose::from_isometry(compute_chain_state(model, q).hand);
}

Matrix6Xd geometric_jacobian(const KinematicModel& model, const Configuration& q) {
  const ChainState state = compute_chain_state(model, q);
  const int n = model.dof();
  Matrix6Xd jac = Matrix6Xd::Zero(6, n);
  const Eigen::Vector3d p_hand = state.hand.translation();
  for (int i = 0; i <= model.end_effector(); ++i) {
    const Eigen::Vector3d& z = state.joint_axes[i];
    jac.block<3, 1>(0, i) = z.cross(p_hand - state.joint_positions[i]);
    jac.block<3, 1>(3, i) = z;
  }
  return jac;
}

void mass_matrix_with_derivatives(const KinematicModel& model, const Configuration& q,
                                  Eigen::MatrixXd& mass,
                                  std::vector<Eigen::MatrixXd>* derivatives) {
  const ChainState state = compute_chain_state(model, q);
  const int n = model.dof();

  std::vector<Vector6d> axes(n);
  for (int i = 0; i < n; ++i) {
    axes[i].head<3>() = state.joint_axes[i];
    axes[i].tail<3>() = state.joint_positions[i].cross(state.joint_axes[i]);
  }

  // composite[j] = sum of spatial inertias of links j..n-1.
  std::vector<Matrix6d> composite(n);
  Matrix6d acc = Matrix6d::Zero();
  for (int j = n - 1; j >= 0; --j) {
    acc += spatial_inertia(model.link(j), state.link_frames[j]);
    composite[j] = acc;
  }

  // force[j] = composite[j] * axes[j]
  std::vector<Vector6d> force(n);
  for (int j = 0; j < n; ++j) force[j] = composite[j] * axes[j];

  mass.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      mass(i, j) = axes[i].dot(force[j]);
      mass(j, i) = mass(i, j);
    }
  }
  if (!mass.allFinite()) throw NumericalError("mass matrix has non-finite entries");

  if (derivatives == nullptr) return;

  // d(axes[i])/dq_k = axes[k] x axes[i] for k < i. The composite inertia of
  // subtree j moves rigidly with joint k and its derivative is
  // crf(axes[k]) * C - C * crm(axes[k]) with C = composite[max(j, k)].
  derivatives->assign(n, Eigen::MatrixXd::Zero(n, n));
  std::vector<std::vector<Vector6d>> axis_rate(n, std::vector<Vector6d>(n, Vector6d::Zero()));
  for (int k = 0; k < n; ++k) {
    const Matrix6d cross = motion_cross(axes[k]);
    for (int i = k + 1; i < n; ++i) axis_rate[k][i] = cross * axes[i];
  }
  for (int k = 0; k < n; ++k) {
    const Matrix6d cross = motion_cross(axes[k]);
    Eigen::MatrixXd& slice = (*derivatives)[k];
    for (int j = 0; j < n; ++j) {
      const Matrix6d& c = composite[std::max(j, k)];
      // (crf(S_k) C - C crm(S_k)) S_j, with crf = -crm^T
      const Vector6d composite_rate =
          -cross.transpose() * (c * axes[j]) - c * (cross * axes[j]);
      const Vector6d force_rate = composite_rate + composite[j] * axis_rate[k][j];
      for (int i = 0; i <= j; ++i) {
        const double value = axis_rate[k][i].dot(force[j]) + axes[i].dot(force_rate);
        slice(i, j) = value;
        slice(j, i) = value;
      }
    }
  }
}

Eigen::MatrixXd mass_matrix(const KinematicModel& model, const Configuration& q) {
  Eigen::MatrixXd mass;
  mass_matrix_with_derivatives(model, q, mass, nullptr);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mass, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 1e-12 * mass.trace()) {
    throw NumericalError("mass matrix of model '" + model.name() +
                         "' is not positive definite (degenerate model)");
  }
  return mass;
}

std::vector<Eigen::MatrixXd> mass_matrix_derivatives(const KinematicModel& model,
                                                     const Configuration& q) {
  Eigen::MatrixXd mass;
  std::vector<Eigen::MatrixXd> derivatives;
  mass_matrix_with_derivatives(model, q, mass, &derivatives);
  return derivatives;
}

}  // namespace geosyn
