// Copyright 2026 The orthodyn Authors
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

#include "orthodyn/chain_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orthodyn {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Frame k (0-based) -> tree coordinate index, or -1 for frames without one.
constexpr std::array<int, kFramesPerChain> kTreeIndexOfFrame = {0, 1, 2, 3, 4, -1,
                                                                 5, 3, -1};

// Rates of frames 1..9 from tree rates; frame 8 moves with q4.
FrameValues tree_frame_rates(const Vec6& tree_qd) {
  FrameValues out{};
  for (int k = 0; k < kFramesPerChain; ++k) {
    const int idx = kTreeIndexOfFrame[k];
    out[k] = idx < 0 ? 0.0 : tree_qd[idx];
  }
  return out;
}

}  // namespace

const GMatrix& closure_jacobian() {
  static const GMatrix g = [] {
    GMatrix m;
    m << 1, 0, 0,
         0, 1, 0,
         0, 0, 1,
         0, 0, -1,
         0, -1, 0,
         0, 0, 1;
    return m;
  }();
  return g;
}

TreeState closure_expand(const Vec3& q, const Vec3& qd, const Vec3& qdd) {
  const GMatrix& g = closure_jacobian();
  TreeState ts;
  ts.q = g * q;
  ts.q[4] -= kHalfPi;
  ts.qd = g * qd;
  ts.qdd = g * qdd;
  return ts;
}

FrameValues tree_frame_values(const Vec6& tree_q) {
  return tree_frame_rates(tree_q);
}

Vec6 tree_newton_euler(const RobotModel& model, int chain, const TreeState& ts,
                       const Vec3& gravity, const Vec3& f_ext) {
  const ChainGeometry& geom = model.chains[chain];
  const auto table = geom.frames();
  const auto poses = frame_poses(model, chain, tree_frame_values(ts.q));
  const FrameValues rate = tree_frame_rates(ts.qd);
  const FrameValues accel = tree_frame_rates(ts.qdd);

  // Frames 8 and 9 are massless and carry no loads, so the recursion stops
  // at the seven bodies.
  constexpr int kBodies = kBodiesPerChain;
  std::array<Vec3, kBodies> omega, omega_dot, lin_acc, force, moment;

  for (int k = 0; k < kBodies; ++k) {
    const int parent = table[k].parent - 1;
    const Vec3 w_p = parent < 0 ? Vec3(Vec3::Zero()) : Vec3(omega[parent]);
    const Vec3 wd_p = parent < 0 ? Vec3(Vec3::Zero()) : Vec3(omega_dot[parent]);
    const Vec3 a_p = parent < 0 ? Vec3(-gravity) : lin_acc[parent];
    const Vec3 o_p = parent < 0 ? Vec3(Vec3::Zero()) : Vec3(poses[parent].translation());

    const Vec3 origin = poses[k].translation();
    const Vec3 z = poses[k].linear().col(2);
    const Vec3 r = origin - o_p;

    const Vec3 carried = a_p + wd_p.cross(r) + w_p.cross(w_p.cross(r));
    if (table[k].prismatic) {
      omega[k] = w_p;
      omega_dot[k] = wd_p;
      lin_acc[k] = carried + 2.0 * rate[k] * w_p.cross(z) + accel[k] * z;
    } else {
      omega[k] = w_p + rate[k] * z;
      omega_dot[k] = wd_p + accel[k] * z + w_p.cross(rate[k] * z);
      lin_acc[k] = carried;
    }

    const LinkInertia& li = geom.bodies[k];
    const Mat3& rot = poses[k].linear();
    const Vec3 ms = rot * li.first_moment;
    const Mat3 j = rot * li.inertia * rot.transpose();
    const Vec3& w = omega[k];
    const Vec3& wd = omega_dot[k];
    force[k] = li.mass * lin_acc[k] + wd.cross(ms) + w.cross(w.cross(ms));
    moment[k] = j * wd + w.cross(j * w) + ms.cross(lin_acc[k]);
  }

  // Body 6 pushes on the platform with f_ext at its origin.
  force[5] += f_ext;

  std::array<double, kBodies> joint{};
  for (int k = kBodies - 1; k >= 0; --k) {
    const Vec3 z = poses[k].linear().col(2);
    joint[k] = table[k].prismatic ? force[k].dot(z) : moment[k].dot(z);
    const int parent = table[k].parent - 1;
    if (parent < 0) continue;
    const Vec3 r = poses[k].translation() - poses[parent].translation();
    force[parent] += force[k];
    moment[parent] += moment[k] + r.cross(force[k]);
  }

  Vec6 out;
  for (int t = 0; t < 6; ++t) out[t] = joint[kTreeJointFrames[t] - 1];
  return out;
}

Vec3 chain_torques_H(const RobotModel& model, int chain, const Vec3& q,
                     const Vec3& qd, const Vec3& qdd, const Vec3& gravity) {
  const TreeState ts = closure_expand(q, qd, qdd);
  return closure_jacobian().transpose() *
         tree_newton_euler(model, chain, ts, gravity);
}

Vec3 chain_torques_H(const RobotModel& model, int chain, const Vec3& q,
                     const Vec3& qd, const Vec3& qdd) {
  return chain_torques_H(model, chain, q, qd, qdd, model.gravity);
}

Mat3 chain_inertia_A(const RobotModel& model, int chain, const Vec3& q) {
  Mat3 a;
  for (int j = 0; j < 3; ++j) {
    a.col(j) = chain_torques_H(model, chain, q, Vec3::Zero(), Vec3::Unit(j),
                               Vec3::Zero());
  }
  const double norm = a.norm();
  const double defect = (a - a.transpose()).norm();
  if (defect > 1e-8 * norm) {
    std::ostringstream msg;
    msg << "chain " << chain + 1 << ": inertia matrix asymmetry "
        << defect / norm;
    throw NumericalError(msg.str());
  }
  return a;
}

Vec3 chain_bias_h(const RobotModel& model, int chain, const Vec3& q,
                  const Vec3& qd) {
  return chain_torques_H(model, chain, q, qd, Vec3::Zero());
}

Vec3 chain_reaction_force(const RobotModel& model, int chain, const Vec3& q,
                          const Vec3& qd, const Vec3& qdd, double gamma_1) {
  const Mat3 j_inv = chain_jacobian_inverse(model, chain, q);
  const Vec3 gamma(gamma_1, 0.0, 0.0);
  return j_inv.transpose() * (gamma - chain_torques_H(model, chain, q, qd, qdd));
}

Vec3 chain_reaction_force_cartesian(const RobotModel& model, int chain,
                                    const Vec3& q, const Vec3& qd,
                                    const Vec3& qdd, double gamma_1,
                                    const Mat3& jp_inv) {
  const Mat3 j_inv = chain_jacobian_inverse(model, chain, q);
  const Vec3 h_x = j_inv.transpose() * chain_torques_H(model, chain, q, qd, qdd);
  return -h_x + jp_inv.transpose().col(chain) * gamma_1;
}

}  // namespace orthodyn
