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

#include "orthodyn/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orthodyn {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string chain_name(int chain) {
  return "chain " + std::to_string(chain + 1);
}

// Base frame at zero stroke: its rotation maps chain-local coordinates to R0
// and its origin is the anchor A_i.
Transform base_pose(const ChainGeometry& c) {
  return frame_transform(c.base_frame, 0.0);
}

// The chain Jacobian in the base frame. Every chain has this same local form;
// the base rotation permutes it into R0.
Mat3 local_jacobian(double D4, const Vec3& q) {
  const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
  const double c3 = std::cos(q[2]), s3 = std::sin(q[2]);
  Mat3 j;
  j << 0.0, -D4 * c3 * s2, -D4 * s3 * c2,
       0.0, 0.0, -D4 * c3,
       1.0, -D4 * c3 * c2, D4 * s3 * s2;
  return j;
}

double arcsine_checked(double arg, int chain, int which) {
  if (!std::isfinite(arg) || std::abs(arg) > 1.0 - kArcsineMargin) {
    std::ostringstream msg;
    msg << chain_name(chain) << ": arcsine argument " << arg << " for q"
        << (which == 1 ? 3 : 2) << " is outside [-1, 1]";
    throw OutOfWorkspace(chain, which, msg.str());
  }
  return std::asin(arg);
}

}  // namespace

Vec3 chain_igm(const RobotModel& model, int chain, const Vec3& P) {
  const ChainGeometry& c = model.chains[chain];
  const Transform base = base_pose(c);
  const Vec3 p = base.linear().transpose() * (P - base.translation());

  const double q3 = arcsine_checked(-p.y() / c.D4, chain, 1);
  const double c3 = std::cos(q3);
  const double q2 = -(arcsine_checked(-p.x() / (c3 * c.D4), chain, 2) + kHalfPi);
  const double q1 = p.z() - c.D6 + c.D4 * c3 * std::sin(q2);
  return {q1, q2, q3};
}

IgmResult igm(const RobotModel& model, const Vec3& P) {
  IgmResult out;
  for (int i = 0; i < kNumChains; ++i) {
    out.chain_q[i] = chain_igm(model, i, P);
    out.L[i] = out.chain_q[i][0];
  }
  return out;
}

FrameValues closed_chain_values(const Vec3& q) {
  return {q[0], q[1], q[2], -q[2], -q[1] - kHalfPi, 0.0, q[2], -q[2], 0.0};
}

std::array<Transform, kFramesPerChain> frame_poses(const RobotModel& model,
                                                   int chain,
                                                   const FrameValues& values) {
  const auto table = model.chains[chain].frames();
  std::array<Transform, kFramesPerChain> poses;
  for (int k = 0; k < kFramesPerChain; ++k) {
    const Transform local = frame_transform(table[k], values[k]);
    const int parent = table[k].parent;
    poses[k] = parent == 0 ? local : poses[parent - 1] * local;
  }
  return poses;
}

std::array<Transform, kFramesPerChain> chain_frame_poses(const RobotModel& model,
                                                         int chain,
                                                         const Vec3& q) {
  return frame_poses(model, chain, closed_chain_values(q));
}

Vec3 chain_forward_point(const RobotModel& model, int chain, const Vec3& q) {
  return chain_frame_poses(model, chain, q)[5].translation();
}

Mat3 chain_jacobian(const RobotModel& model, int chain, const Vec3& q) {
  const ChainGeometry& c = model.chains[chain];
  return base_pose(c).linear() * local_jacobian(c.D4, q);
}

Mat3 chain_jacobian_inverse(const RobotModel& model, int chain, const Vec3& q) {
  if (std::abs(std::cos(q[2])) <= kSingularCos) {
    throw ChainSingular(chain, chain_name(chain) + ": cos(q3) is zero");
  }
  const Mat3 j = chain_jacobian(model, chain, q);
  Mat3 inv;
  bool invertible = false;
  double det = 0.0;
  j.computeInverseAndDetWithCheck(inv, det, invertible, 0.0);
  if (!invertible || !inv.allFinite()) {
    throw ChainSingular(chain, chain_name(chain) + ": Jacobian is singular");
  }
  const double cond = j.cwiseAbs().colwise().sum().maxCoeff() *
                      inv.cwiseAbs().colwise().sum().maxCoeff();
  if (cond > kMaxCondition) {
    std::ostringstream msg;
    msg << chain_name(chain) << ": Jacobian condition number " << cond;
    throw ChainSingular(chain, msg.str());
  }
  return inv;
}

Mat3 chain_jacobian_inverse_closed_form(const RobotModel& model, int chain,
                                        const Vec3& q) {
  const ChainGeometry& c = model.chains[chain];
  const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
  const double c3 = std::cos(q[2]), s3 = std::sin(q[2]);
  if (std::abs(c3) <= kSingularCos) {
    throw ChainSingular(chain, chain_name(chain) + ": cos(q3) is zero");
  }
  const double D = c.D4;
  Mat3 local;
  local << -c2 / s2, s3 / (c3 * s2), 1.0,
           -1.0 / (D * c3 * s2), s3 * c2 / (D * c3 * c3 * s2), 0.0,
           0.0, -1.0 / (D * c3), 0.0;
  return local * base_pose(c).linear().transpose();
}

Mat3 robot_jacobian_inverse(const RobotModel& model,
                            const PerChain<Vec3>& chain_q) {
  Mat3 jp_inv;
  for (int i = 0; i < kNumChains; ++i) {
    jp_inv.row(i) = chain_jacobian_inverse(model, i, chain_q[i]).row(0);
  }
  return jp_inv;
}

IkVelocityResult ik_velocity(const RobotModel& model,
                             const PerChain<Vec3>& chain_q, const Vec3& V) {
  IkVelocityResult out;
  for (int i = 0; i < kNumChains; ++i) {
    out.chain_qd[i] = chain_jacobian_inverse(model, i, chain_q[i]) * V;
    out.Ldot[i] = out.chain_qd[i][0];
  }
  return out;
}

Mat3 chain_jacobian_dot(const RobotModel& model, int chain, const Vec3& q,
                        const Vec3& qd) {
  const ChainGeometry& c = model.chains[chain];
  const double D = c.D4;
  const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
  const double c3 = std::cos(q[2]), s3 = std::sin(q[2]);
  const double dq2 = qd[1], dq3 = qd[2];
  Mat3 jd;
  jd << 0.0, -D * (-s3 * dq3 * s2 + c3 * c2 * dq2), -D * (c3 * dq3 * c2 - s3 * s2 * dq2),
        0.0, 0.0, D * s3 * dq3,
        0.0, D * (s3 * c2 * dq3 + c3 * s2 * dq2), D * (c3 * s2 * dq3 + s3 * c2 * dq2);
  return base_pose(c).linear() * jd;
}

Vec3 ik_acceleration(const RobotModel& model, int chain, const Vec3& q,
                     const Vec3& qd, const Vec3& A) {
  const Mat3 j_inv = chain_jacobian_inverse(model, chain, q);
  return j_inv * (A - chain_jacobian_dot(model, chain, q, qd) * qd);
}

PerChain<ChainState> chain_states(const RobotModel& model,
                                  const PlatformState& platform) {
  const IgmResult pos = igm(model, platform.P);
  const IkVelocityResult vel = ik_velocity(model, pos.chain_q, platform.V);
  PerChain<ChainState> out{};
  for (int i = 0; i < kNumChains; ++i) {
    out[i].q = pos.chain_q[i];
    out[i].qd = vel.chain_qd[i];
    out[i].qdd = ik_acceleration(model, i, out[i].q, out[i].qd, platform.A);
  }
  return out;
}

}  // namespace orthodyn
